#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "conceptlab/census.hpp"
#include "conceptlab/golden.hpp"
#include "conceptlab/io.hpp"
#include "conceptlab/report.hpp"
#include "oracles.hpp"

using namespace conceptlab;

namespace
{

std::string slurp( const std::string& path )
{
  std::ifstream in( path );
  REQUIRE( in );
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

compression_trace compress( const concept_class& cls )
{
  auto out = run_ordered_compression( cls );
  REQUIRE( std::holds_alternative<compression_trace>( out ) );
  return std::get<compression_trace>( std::move( out ) );
}

std::vector<std::string> lines_of( const std::string& text )
{
  std::vector<std::string> out;
  std::istringstream in( text );
  for ( std::string line; std::getline( in, line ); )
  {
    out.push_back( line );
  }
  return out;
}

/* Counts on the text-table row whose label column is `labels`. */
std::vector<std::uint32_t> row_counts( const std::string& table, const std::string& labels )
{
  for ( const auto& line : lines_of( table ) )
  {
    if ( line.rfind( labels + "  ", 0 ) == 0 )
    {
      std::istringstream in( line.substr( labels.size() ) );
      std::vector<std::uint32_t> counts;
      for ( std::uint32_t c; in >> c; )
      {
        counts.push_back( c );
      }
      return counts;
    }
  }
  FAIL( "no row labelled " << labels );
  return {};
}

void check_parse_error( const std::string& text, std::size_t line, const std::string& needle )
{
  try
  {
    parse_class( text );
    FAIL( "expected a parse error" );
  }
  catch ( const parse_error& e )
  {
    CHECK( e.line() == line );
    CHECK( std::string( e.what() ).find( needle ) != std::string::npos );
  }
}

} // namespace

TEST_CASE( "parsing class files" )
{
  const auto c1 = parse_class( slurp( CONCEPTLAB_FIXTURES "/c1.txt" ) );
  CHECK( c1 == builtin_c1() );

  const auto tiny = parse_class( "0\n1\n" );
  CHECK( tiny.num_instances() == 1 );
  CHECK( tiny.size() == 2 );

  const auto named = parse_class( "# weather\ninstances: sun rain\n\n10  # dry\n01\n" );
  CHECK( named.instance_names() == std::vector<std::string>{ "sun", "rain" } );
  CHECK( named.row( 0 ) == "10" );
  CHECK( named.size() == 2 );

  check_parse_error( "01\n01\n", 2, "first seen on line 1" );
  check_parse_error( "01\n011\n", 2, "ragged" );
  check_parse_error( "01\n0x\n", 2, "non-binary" );
  check_parse_error( "instances: a b\n011\n", 2, "header" );
  check_parse_error( "01\ninstances: a b\n", 2, "header" );
  check_parse_error( "instances: a a\n", 1, "repeated" );
  check_parse_error( "# nothing\n\n", 0, "no concepts" );
}

TEST_CASE( "serialization round trip" )
{
  CHECK( serialize_class( builtin_c1() ) == "0001\n0010\n0011\n0100\n0101\n0110\n0111\n1001\n1010\n1100\n" );
  std::mt19937 rng( 3 );
  for ( int trial = 0; trial < 200; ++trial )
  {
    const std::size_t n = 1 + rng() % 12;
    const std::size_t m = 1 + rng() % std::min<std::size_t>( 30, std::size_t{ 1 } << n );
    auto cls = oracle::random_rows( rng, n, m );
    if ( trial % 2 )
    {
      std::vector<std::string> names;
      for ( std::size_t i = 0; i < n; ++i )
      {
        names.push_back( "v" + std::to_string( 2 * i ) );
      }
      cls = concept_class( names, std::vector<concept_bits>( cls.concepts().begin(), cls.concepts().end() ) );
    }
    CHECK( parse_class( serialize_class( cls ) ) == cls );
  }
}

TEST_CASE( "fragment text" )
{
  const std::vector<std::string> names{ "x1", "x2", "x3", "x4" };
  const std::vector<std::pair<std::size_t, int>> e{ { 0, 1 }, { 3, 1 } };
  const auto f = make_fragment( e );
  CHECK( format_fragment( f, names ) == "{(x1,1),(x4,1)}" );
  CHECK( format_fragment( fragment{}, names ) == "{}" );
  CHECK( parse_fragment( "{(x1,1),(x4,1)}", names ) == f );
  CHECK( parse_fragment( " { ( x4 , 1 ) , ( x1 , 1 ) } ", names ) == f );
  CHECK( parse_fragment( "{}", names ) == fragment{} );
  CHECK_THROWS_AS( parse_fragment( "(x1,1)", names ), parse_error );
  CHECK_THROWS_AS( parse_fragment( "{(x5,1)}", names ), parse_error );
  CHECK_THROWS_AS( parse_fragment( "{(x1,2)}", names ), parse_error );
  CHECK_THROWS_AS( parse_fragment( "{(x1,1),(x1,0)}", names ), parse_error );
  CHECK( format_labels( 0b01, 2 ) == "0 1" );
  CHECK( format_labels( 0, 0 ) == "-" );
  const std::vector<std::size_t> s{ 0, 1 };
  CHECK( format_subset( s, names ) == "{x1,x2}" );
}

TEST_CASE( "mapping files" )
{
  const auto c1 = builtin_c1();
  const auto mapping = build_teacher_mapping( compress( c1 ) );
  const auto text = format_mapping( mapping, c1 );
  CHECK( lines_of( text ).at( 7 ) == "C8 {(x1,1),(x4,1)}" );
  CHECK( parse_mapping( text, c1 ) == mapping );
  CHECK( parse_mapping( "# comment\n" + text, c1 ) == mapping );

  const auto two = parse_class( "0\n1\n" );
  CHECK_THROWS_AS( parse_mapping( "C1 {}\n", two ), invalid_mapping );
  CHECK_THROWS_AS( parse_mapping( "C1 {}\nC1 {}\n", two ), parse_error );
  CHECK_THROWS_AS( parse_mapping( "C3 {}\n", two ), parse_error );
  CHECK_THROWS_AS( parse_mapping( "D1 {}\n", two ), parse_error );
  try
  {
    parse_mapping( "C1 {}\nC2 {(y,1)}\n", two );
    FAIL( "expected a parse error" );
  }
  catch ( const parse_error& e )
  {
    CHECK( e.line() == 2 );
  }
}

TEST_CASE( "frequency table rendering" )
{
  const auto trace = compress( builtin_c1() );
  const auto& names = trace.cls.instance_names();
  const auto r1 = render_frequency_table( trace.rounds[0], names, output_format::text );
  CHECK( lines_of( r1 ).at( 0 ) == "round 1: pool 10, fragment size 2" );
  CHECK( row_counts( r1, "1 1" ) == std::vector<std::uint32_t>{ 1, 1, 1, 2, 2, 2 } );
  const auto r4 = render_frequency_table( trace.rounds[3], names, output_format::text );
  CHECK( row_counts( r4, "1 1" ) == std::vector<std::uint32_t>{ 0, 0, 0, 1, 1, 1 } );
  CHECK( row_counts( r4, "0 1" ) == std::vector<std::uint32_t>{ 1, 1, 1, 0, 0, 0 } );

  const auto csv = lines_of( render_frequency_table( trace.rounds[0], names, output_format::csv ) );
  CHECK( csv.size() == 25 );
  CHECK( csv.at( 0 ) == "round,subset,pattern,count" );
  CHECK( csv.at( 4 ) == "1,x1 x2,11,1" );

  const auto j = json::parse( render_frequency_table( trace.rounds[0], names, output_format::json ) );
  CHECK( j.at( "cells" ).size() == 24 );

  const auto single = compress( parse_class( "0110\n" ) );
  const auto t = lines_of( render_frequency_table( single.rounds[0], single.cls.instance_names(), output_format::text ) );
  REQUIRE( t.size() == 3 );
  CHECK( t.at( 1 ) == "labels  {}" );
  CHECK( t.at( 2 ) == "-        1" );
}

TEST_CASE( "rendered tables carry the computed counts" )
{
  std::mt19937 rng( 8 );
  for ( int trial = 0; trial < 60; ++trial )
  {
    const std::size_t n = 2 + rng() % 4;
    const auto cls = oracle::random_rows( rng, n, 2 + rng() % ( ( std::size_t{ 1 } << n ) - 1 ) );
    const auto trace = compress( cls );
    for ( const auto& r : trace.rounds )
    {
      const auto text = render_frequency_table( r, cls.instance_names(), output_format::text );
      for ( std::uint32_t p = 0; p < r.table.patterns_per_subset(); ++p )
      {
        std::vector<std::uint32_t> expected;
        for ( std::size_t s = 0; s < r.table.subsets.size(); ++s )
        {
          expected.push_back( r.table.count( s, p ) );
        }
        CHECK( row_counts( text, format_labels( p, r.table.d ) ) == expected );
      }
    }
  }
}

TEST_CASE( "assignment rendering" )
{
  const auto trace = compress( builtin_c1() );
  const auto text = lines_of( render_assignments( trace, output_format::text ) );
  CHECK( text.at( 1 ) == "C8       1001    1      {(x1,1),(x4,1)}" );
  CHECK( text.at( 10 ).rfind( "C7       0111    4      {(x1,0),(x2,1)}", 0 ) == 0 );
  CHECK( text.at( 11 ) == "assigned 21 of 24 fragments" );

  const auto csv = lines_of( render_assignments( trace, output_format::csv ) );
  CHECK( csv.size() == 22 );
  CHECK( csv.at( 1 ) == "C8,1001,1,\"{(x1,1),(x4,1)}\"" );

  const auto j = json::parse( render_assignments( trace, output_format::json ) );
  CHECK( j.at( "unassigned" ).size() == 3 );
  CHECK( j.at( "rounds" ).size() == 4 );

  CHECK( render_trace_figures( trace ) == c1_figures_golden() );
}

TEST_CASE( "stall rendering" )
{
  const concept_class cube( 2, { 0, 1, 2, 3 } );
  const std::vector<std::size_t> pool{ 0, 1, 2, 3 };
  const auto out = compression_round( cube, pool, 1, 1 );
  REQUIRE( std::holds_alternative<stall>( out ) );
  const auto text = render_stall( std::get<stall>( out ), cube );
  CHECK( lines_of( text ).at( 0 ) == "stall in round 1: no fragment has frequency 1" );
  CHECK( text.find( "C4" ) != std::string::npos );
}

TEST_CASE( "json reports round-trip" )
{
  const auto b = compute_bounds( builtin_c1(), 1'000'000 );
  const auto j = bounds_json( b );
  CHECK( j.at( "deg_avg" ).at( "fraction" ) == "12/5" );
  CHECK( j.at( "deg_avg" ).at( "decimal" ) == 2.4 );
  const auto back = bounds_from_json( json::parse( j.dump() ) );
  CHECK( back.vcdim == b.vcdim );
  CHECK( back.td == b.td );
  CHECK( back.nctd_lower == b.nctd_lower );
  CHECK( back.nctd_upper == b.nctd_upper );
  CHECK( back.mapping_non_clashing == b.mapping_non_clashing );
  CHECK( back.nctd.value == b.nctd.value );
  CHECK( back.nctd.lower == b.nctd.lower );
  CHECK( back.nctd.upper == b.nctd.upper );
  CHECK( back.nctd.nodes == b.nctd.nodes );
  CHECK( back.deg_avg == b.deg_avg );
  CHECK( bounds_json( back ).dump() == j.dump() );

  census_config c;
  c.n = 3;
  c.checks = { check_kind::nctd_le_vcdim, check_kind::lemma1 };
  c.budget = 2;
  const auto r = run_census( c );
  REQUIRE_FALSE( r.undecided.empty() );
  CHECK( census_from_json( json::parse( census_json( r ).dump() ) ) == r );

  CHECK( parse_fraction( "6/4" ) == fraction{ 3, 2 } );
  CHECK( to_string( fraction{ 12, 5 } ) == "12/5" );
  CHECK( format_decimal( 2.4 ) == "2.4" );
  CHECK( format_decimal( 2.0 ) == "2" );
  CHECK_THROWS_AS( parse_fraction( "7" ), parse_error );
}
