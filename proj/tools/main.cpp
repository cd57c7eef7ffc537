#include <iostream>

#include "conceptlab/cli.hpp"

int main( int argc, char** argv )
{
  return conceptlab::cli_main( argc, argv, std::cout, std::cerr );
}
