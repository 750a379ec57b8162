#ifndef PG_ERRORS_HPP
#define PG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pg {

// Invalid arguments or violated preconditions (CLI exit code 2).
struct param_error : std::runtime_error {
    explicit param_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Unusable input data: parse failures, empty datasets (CLI exit code 3).
struct data_error : std::runtime_error {
    explicit data_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical breakdown: non-finite values, eigensolver iteration limit.
struct numeric_error : std::runtime_error {
    explicit numeric_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace pg

#endif
