#pragma once

#include <stdexcept>
#include <string>

namespace zoc {

//! Base class for all library errors.
struct error : std::runtime_error {
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

//! Argument outside the documented domain of an operation.
struct domain_error : error {
    explicit domain_error(const std::string& msg) : error(msg) {}
};

//! Malformed distribution/copula spec string.
struct parse_error : error {
    explicit parse_error(const std::string& msg) : error(msg) {}
};

//! Base class for solver failures.
struct numeric_error : error {
    explicit numeric_error(const std::string& msg) : error(msg) {}
};

struct no_sign_change : numeric_error {
    explicit no_sign_change(const std::string& msg) : numeric_error(msg) {}
};

struct no_convergence : numeric_error {
    explicit no_convergence(const std::string& msg) : numeric_error(msg) {}
};

struct invalid_interval : numeric_error {
    explicit invalid_interval(const std::string& msg) : numeric_error(msg) {}
};

struct non_finite_error : numeric_error {
    explicit non_finite_error(const std::string& msg) : numeric_error(msg) {}
};

//! Signals quantile(1) on a distribution with unbounded support.
struct infinite_quantile : error {
    explicit infinite_quantile(const std::string& msg) : error(msg) {}
};

//! The copula has no nondegenerate zero set (e.g. independence).
struct empty_zero_set : error {
    explicit empty_zero_set(const std::string& msg) : error(msg) {}
};

struct dimension_mismatch : error {
    explicit dimension_mismatch(const std::string& msg) : error(msg) {}
};

//! F^{-1}(1/e) = 0, so the gap bound of the bounds machinery is undefined.
struct degenerate_quantile : error {
    explicit degenerate_quantile(const std::string& msg) : error(msg) {}
};

} // namespace zoc
