#pragma once

#include <iosfwd>

namespace conceptlab
{

/*! \brief Exit codes of the command-line tool. */
enum exit_code : int
{
  exit_ok = 0,
  exit_check_failed = 1,
  exit_usage = 2,
  exit_budget = 3
};

/*! \brief Entry point of the `conceptlab` tool, writing to the given streams. */
int cli_main( int argc, const char* const* argv, std::ostream& out, std::ostream& err );

} // namespace conceptlab
