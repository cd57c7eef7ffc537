#include "conceptlab/vc.hpp"

#include <bit>
#include <string>

namespace conceptlab
{

namespace
{

std::size_t floor_log2( std::size_t m )
{
  return static_cast<std::size_t>( std::bit_width( m ) ) - 1;
}

} // namespace

bool shatters( std::span<const concept_bits> concepts, std::span<const std::size_t> subset )
{
  const auto k = subset.size();
  // 2^k distinct patterns need at least 2^k concepts
  if ( k >= 63 || ( std::size_t{ 1 } << k ) > concepts.size() )
  {
    return false;
  }
  const auto needed = std::size_t{ 1 } << k;
  std::vector<std::uint64_t> seen( ( needed + 63 ) / 64, 0 );
  std::size_t distinct = 0;
  for ( auto c : concepts )
  {
    const auto p = pattern_of( c, subset );
    auto& word = seen[p >> 6];
    const auto bit = std::uint64_t{ 1 } << ( p & 63 );
    if ( !( word & bit ) )
    {
      word |= bit;
      if ( ++distinct == needed )
      {
        return true;
      }
    }
  }
  return false;
}

bool shatters( const concept_class& cls, std::span<const std::size_t> subset )
{
  subset_mask( subset, cls.num_instances() );
  return shatters( cls.concepts(), subset );
}

vc_report vc_dimension( std::span<const concept_bits> concepts, std::size_t num_instances )
{
  vc_report report;
  if ( concepts.empty() )
  {
    return report;
  }
  const auto limit = std::min( num_instances, floor_log2( concepts.size() ) );
  for ( std::size_t k = 1; k <= limit; ++k )
  {
    bool found = false;
    for ( const auto& subset : combinations( num_instances, k ) )
    {
      if ( shatters( concepts, subset ) )
      {
        report.dimension = k;
        report.witness = subset;
        found = true;
        break;
      }
    }
    if ( !found )
    {
      break;
    }
  }
  return report;
}

vc_report vc_dimension( const concept_class& cls )
{
  return vc_dimension( cls.concepts(), cls.num_instances() );
}

std::uint64_t sauer_sum_bound( const concept_class& cls, std::size_t d )
{
  if ( d > cls.num_instances() )
  {
    throw error( "fragment size " + std::to_string( d ) + " exceeds the domain size" );
  }
  std::uint64_t sum = 0;
  for ( const auto& subset : combinations( cls.num_instances(), d ) )
  {
    sum += restriction( cls, subset ).size();
  }
  return sum;
}

bool check_lemma1( const concept_class& cls )
{
  return cls.size() <= sauer_sum_bound( cls, vc_dimension( cls ).dimension );
}

} // namespace conceptlab
