#pragma once

#include <stdexcept>
#include <string>

namespace glkde {

//! Invalid argument or precondition violation (non-positive bandwidth, empty
//! sample, bandwidth outside the grid, ...).
class DomainError : public std::domain_error
{
public:
  using std::domain_error::domain_error;
};

//! The dyadic bandwidth grid is empty for the requested (n, q).
class DegenerateGridError : public DomainError
{
public:
  using DomainError::DomainError;
};

//! The sample carries no dispersion (all values identical).
class DegenerateDataError : public DomainError
{
public:
  using DomainError::DomainError;
};

//! Quadrature or root finding failed to reach its tolerance.
class NumericalError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

//! File could not be read or written.
class IoError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

} // namespace glkde
