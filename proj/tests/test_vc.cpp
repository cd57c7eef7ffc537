#include <doctest.h>

#include <bit>
#include <random>

#include "conceptlab/census.hpp"
#include "conceptlab/vc.hpp"
#include "oracles.hpp"

using namespace conceptlab;

namespace
{

concept_class full_cube( std::size_t n )
{
  std::vector<concept_bits> all;
  for ( concept_bits c = 0; c < ( concept_bits{ 1 } << n ); ++c )
  {
    all.push_back( c );
  }
  return concept_class( n, all );
}

} // namespace

TEST_CASE( "shattering examples" )
{
  const auto c1 = builtin_c1();
  const std::vector<std::size_t> x12{ 0, 1 }, x34{ 2, 3 }, x123{ 0, 1, 2 }, none;
  CHECK( shatters( c1, x12 ) );
  CHECK( shatters( c1, x34 ) );
  CHECK_FALSE( shatters( c1, x123 ) );
  CHECK( shatters( c1, none ) );
  CHECK_THROWS_AS( shatters( c1, std::vector<std::size_t>{ 2, 1 } ), malformed_subset );
}

TEST_CASE( "vc dimension examples" )
{
  const auto r = vc_dimension( builtin_c1() );
  CHECK( r.dimension == 2 );
  CHECK( r.witness == std::vector<std::size_t>{ 0, 1 } );

  const auto single = concept_class::from_rows( std::vector<std::string>{ "0110" } );
  CHECK( vc_dimension( single ).dimension == 0 );
  CHECK( vc_dimension( single ).witness.empty() );

  CHECK( vc_dimension( full_cube( 3 ) ).dimension == 3 );
  CHECK( vc_dimension( full_cube( 1 ) ).dimension == 1 );
  // two complementary concepts shatter every single instance but no pair
  const auto pair = concept_class::from_rows( std::vector<std::string>{ "000", "111" } );
  CHECK( vc_dimension( pair ).dimension == 1 );
}

TEST_CASE( "sauer sum" )
{
  const auto c1 = builtin_c1();
  CHECK( sauer_sum_bound( c1, 2 ) == 24 );
  CHECK( sauer_sum_bound( c1, 0 ) == 1 );
  CHECK( sauer_sum_bound( full_cube( 2 ), 2 ) == 4 );
  CHECK_THROWS_AS( sauer_sum_bound( c1, 5 ), error );
  CHECK( check_lemma1( c1 ) );
  CHECK( check_lemma1( concept_class::from_rows( std::vector<std::string>{ "1" } ) ) );
}

TEST_CASE( "vc dimension agrees with the power-set oracle" )
{
  // every class over three instances
  for ( std::uint64_t mask = 1; mask < 256; ++mask )
  {
    const auto cls = class_from_mask( 3, mask );
    const auto rows = oracle::rows_of( cls );
    const auto r = vc_dimension( cls );
    REQUIRE( r.dimension == oracle::vcdim( rows ) );
    CHECK( r.witness.size() == r.dimension );
    CHECK( shatters( cls, r.witness ) );
    CHECK( sauer_sum_bound( cls, r.dimension ) == oracle::sauer_sum( rows, r.dimension ) );
  }
  std::mt19937 rng( 5 );
  for ( int trial = 0; trial < 150; ++trial )
  {
    const std::size_t n = 4 + rng() % 4;
    const std::size_t m = 1 + rng() % std::min<std::size_t>( 40, std::size_t{ 1 } << n );
    const auto cls = oracle::random_rows( rng, n, m );
    const auto rows = oracle::rows_of( cls );
    const auto d = vc_dimension( cls ).dimension;
    REQUIRE( d == oracle::vcdim( rows ) );
    CHECK( sauer_sum_bound( cls, d ) == oracle::sauer_sum( rows, d ) );
    CHECK( check_lemma1( cls ) );
  }
}

TEST_CASE( "vc dimension properties" )
{
  std::mt19937 rng( 17 );
  for ( int trial = 0; trial < 150; ++trial )
  {
    const std::size_t n = 2 + rng() % 5;
    const std::size_t m = 1 + rng() % ( std::size_t{ 1 } << n );
    const auto cls = oracle::random_rows( rng, n, m );
    const auto r = vc_dimension( cls );

    CHECK( r.dimension <= n );
    CHECK( ( std::size_t{ 1 } << r.dimension ) <= m );

    // every subset of the witness is shattered too
    const auto wmask = subset_mask( r.witness, n );
    for ( std::uint64_t s = wmask;; s = ( s - 1 ) & wmask )
    {
      std::vector<std::size_t> sub;
      for ( std::size_t i = 0; i < n; ++i )
      {
        if ( ( s >> i ) & 1u )
        {
          sub.push_back( i );
        }
      }
      CHECK( shatters( cls, sub ) );
      if ( s == 0 )
      {
        break;
      }
    }

    // dropping a concept never raises the dimension
    if ( m > 1 )
    {
      std::vector<concept_bits> rest( cls.concepts().begin(), cls.concepts().end() );
      rest.erase( rest.begin() + static_cast<std::ptrdiff_t>( rng() % m ) );
      CHECK( vc_dimension( concept_class( n, rest ) ).dimension <= r.dimension );
    }
  }
}
