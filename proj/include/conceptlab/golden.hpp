#pragma once

#include <string_view>

namespace conceptlab
{

/*! \brief Expected `demo-c1` text: the four frequency tables and the assignment table of the ten-concept example. */
std::string_view c1_figures_golden();

} // namespace conceptlab
