#pragma once

#include <stdexcept>
#include <string>

namespace coxops {

// Every failure raised by the library derives from coxops::error so callers
// (the CLI in particular) can map them onto exit codes in one place.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class invalid_argument : public error {
public:
    using error::error;
};

class dimension_mismatch : public error {
public:
    using error::error;
};

class not_divisible : public error {
public:
    using error::error;
};

class not_polynomial : public error {
public:
    using error::error;
};

class not_symmetric : public error {
public:
    using error::error;
};

class non_member : public error {
public:
    using error::error;
};

class non_homogeneous : public error {
public:
    using error::error;
};

class not_closed : public error {
public:
    using error::error;
};

class parse_error : public error {
public:
    using error::error;
};

} // namespace coxops
