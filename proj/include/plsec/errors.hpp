#pragma once

#include <stdexcept>
#include <string>

namespace plsec {

/// Thrown when an operation receives an argument outside its domain
/// (negative variance, negative SNR, empty candidate list, ...).
class invalid_parameter : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Thrown by relay selection when the relay set is empty.
class no_relay_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Thrown when a statistic cannot be computed from the available trials
/// (e.g. a zero-probability point inside a log-log slope window). The fix
/// is to rerun with more trials.
class insufficient_resolution_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Scenario configuration failed to parse or validate.
class config_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// File I/O failure; message carries the offending path.
class io_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace plsec
