#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace conceptlab
{

/*! \brief Base class of every error raised by the library. */
class error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

class malformed_fragment : public error
{
public:
  using error::error;
};

class malformed_subset : public error
{
public:
  using error::error;
};

class invalid_class : public error
{
public:
  using error::error;
};

class duplicate_concept : public invalid_class
{
public:
  using invalid_class::invalid_class;
};

/*! \brief Input text could not be parsed; carries the 1-based line when known. */
class parse_error : public error
{
public:
  parse_error( const std::string& what, std::size_t line = 0 )
      : error( line == 0 ? what : "line " + std::to_string( line ) + ": " + what ), line_( line )
  {
  }

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

class unassigned_fragment : public error
{
public:
  using error::error;
};

class invalid_mapping : public error
{
public:
  using error::error;
};

class infeasible_enumeration : public error
{
public:
  using error::error;
};

} // namespace conceptlab
