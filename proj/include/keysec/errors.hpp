#pragma once

#include <stdexcept>
#include <string>

namespace keysec {

// Malformed or inconsistent input: bad normalization, index out of range,
// non-Hermitian matrix, inconsistent dimensions, and the like.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// A requested computation would exceed a configured size cap (dense
// enumeration too large, joint dimension over the limit, ...).
class SizeGuardError : public std::runtime_error {
public:
    explicit SizeGuardError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace keysec
