#include "conceptlab/compression.hpp"

#include <algorithm>
#include <string>

#include "conceptlab/vc.hpp"

namespace conceptlab
{

std::uint32_t frequency_table::count_of( const fragment& f ) const
{
  if ( f.size() != d )
  {
    throw malformed_fragment( "fragment size does not match the table" );
  }
  std::vector<std::size_t> subset;
  for ( auto [i, l] : entries( f ) )
  {
    subset.push_back( i );
  }
  const auto it = std::lower_bound( subsets.begin(), subsets.end(), subset );
  if ( it == subsets.end() || *it != subset )
  {
    throw malformed_fragment( "fragment refers to an instance outside the domain" );
  }
  return count( static_cast<std::size_t>( it - subsets.begin() ), pattern_of( f.values, subset ) );
}

std::uint64_t frequency_table::total() const
{
  std::uint64_t t = 0;
  for ( auto c : counts )
  {
    t += c;
  }
  return t;
}

frequency_table fragment_frequencies( std::span<const concept_bits> pool, std::size_t num_instances, std::size_t d,
                                      std::size_t round_index )
{
  if ( pool.empty() )
  {
    throw error( "cannot count fragment frequencies over an empty pool" );
  }
  if ( d > num_instances || d > 31 )
  {
    throw error( "fragment size " + std::to_string( d ) + " is out of range" );
  }
  frequency_table table;
  table.round_index = round_index;
  table.d = d;
  table.pool_size = pool.size();
  table.subsets = combinations( num_instances, d );
  const auto width = table.patterns_per_subset();
  table.counts.assign( table.subsets.size() * width, 0 );
  for ( std::size_t s = 0; s < table.subsets.size(); ++s )
  {
    auto* row = table.counts.data() + s * width;
    for ( auto c : pool )
    {
      ++row[pattern_of( c, table.subsets[s] )];
    }
  }
  return table;
}

round_outcome compression_round( const concept_class& cls, std::span<const std::size_t> pool, std::size_t d,
                                 std::size_t round_index )
{
  if ( pool.empty() )
  {
    throw error( "compression round on an empty pool" );
  }
  std::vector<concept_bits> members;
  members.reserve( pool.size() );
  for ( auto i : pool )
  {
    members.push_back( cls[i] );
  }

  round_record rec;
  rec.round_index = round_index;
  rec.pool_before.assign( pool.begin(), pool.end() );
  rec.table = fragment_frequencies( members, cls.num_instances(), d, round_index );

  const auto width = rec.table.patterns_per_subset();
  std::vector<bool> removed( pool.size(), false );
  for ( std::size_t s = 0; s < rec.table.subsets.size(); ++s )
  {
    const auto& subset = rec.table.subsets[s];
    for ( std::uint32_t p = 0; p < width; ++p )
    {
      if ( rec.table.count( s, p ) != 1 )
      {
        continue;
      }
      const auto f = pattern_fragment( subset, p );
      const auto owner = std::find_if( members.begin(), members.end(),
                                       [&f]( auto c ) { return consistent( c, f ); } );
      const auto k = static_cast<std::size_t>( owner - members.begin() );
      rec.assignments.push_back( { f, pool[k] } );
      removed[k] = true;
    }
  }

  if ( rec.assignments.empty() )
  {
    return stall{ round_index, std::move( rec.pool_before ), std::move( rec.table ) };
  }
  for ( std::size_t k = 0; k < pool.size(); ++k )
  {
    if ( !removed[k] )
    {
      rec.pool_after.push_back( pool[k] );
    }
  }
  return rec;
}

compression_outcome run_ordered_compression( const concept_class& cls )
{
  compression_trace trace{ cls, vc_dimension( cls ).dimension, {}, {} };

  std::vector<std::size_t> pool( cls.size() );
  for ( std::size_t i = 0; i < pool.size(); ++i )
  {
    pool[i] = i;
  }

  for ( std::size_t round = 1; !pool.empty(); ++round )
  {
    auto outcome = compression_round( cls, pool, trace.d, round );
    if ( auto* s = std::get_if<stall>( &outcome ) )
    {
      return std::move( *s );
    }
    auto& rec = std::get<round_record>( outcome );
    for ( const auto& a : rec.assignments )
    {
      const auto [it, inserted] = trace.fragment_index.emplace( a.frag, a.concept_index );
      if ( !inserted )
      {
        // a fragment reaching count 1 twice would mean its first owner was never removed
        throw error( "fragment assigned in two different rounds" );
      }
    }
    pool = rec.pool_after;
    trace.rounds.push_back( std::move( rec ) );
  }
  return trace;
}

std::vector<fragment> compression_trace::fragments_of( std::size_t concept_index ) const
{
  std::vector<fragment> out;
  for ( const auto& [f, owner] : fragment_index )
  {
    if ( owner == concept_index )
    {
      out.push_back( f );
    }
  }
  return out;
}

std::size_t compression_trace::round_of( std::size_t concept_index ) const
{
  for ( const auto& r : rounds )
  {
    for ( const auto& a : r.assignments )
    {
      if ( a.concept_index == concept_index )
      {
        return r.round_index;
      }
    }
  }
  throw error( "concept " + concept_name( concept_index ) + " was never assigned" );
}

std::vector<fragment> compression_trace::unassigned_fragments() const
{
  std::vector<fragment> out;
  for ( const auto& subset : combinations( cls.num_instances(), d ) )
  {
    for ( std::uint32_t p = 0; p < ( std::uint32_t{ 1 } << d ); ++p )
    {
      auto f = pattern_fragment( subset, p );
      if ( !fragment_index.contains( f ) )
      {
        out.push_back( f );
      }
    }
  }
  std::sort( out.begin(), out.end(), fragment_order{} );
  return out;
}

std::size_t reconstruct( const compression_trace& trace, const fragment& f )
{
  if ( f.size() != trace.d )
  {
    throw malformed_fragment( "fragment size " + std::to_string( f.size() ) + " differs from the compression size " +
                              std::to_string( trace.d ) );
  }
  const auto it = trace.fragment_index.find( f );
  if ( it == trace.fragment_index.end() )
  {
    throw unassigned_fragment( "fragment was never assigned" );
  }
  return it->second;
}

} // namespace conceptlab
