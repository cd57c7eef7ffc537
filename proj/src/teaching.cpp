#include "conceptlab/teaching.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <string>

#include "conceptlab/vc.hpp"

namespace conceptlab
{

std::size_t teacher_mapping::order() const noexcept
{
  std::size_t ord = 0;
  for ( const auto& f : sets )
  {
    ord = std::max( ord, f.size() );
  }
  return ord;
}

fraction fraction::reduced( std::uint64_t num, std::uint64_t den )
{
  if ( den == 0 )
  {
    throw error( "fraction with zero denominator" );
  }
  const auto g = std::gcd( num, den );
  return { num / g, den / g };
}

teacher_mapping build_teacher_mapping( const compression_trace& trace )
{
  teacher_mapping mapping;
  mapping.sets.resize( trace.cls.size() );
  std::vector<bool> seen( trace.cls.size(), false );
  // fragment_index iterates in fragment order, so the first hit per concept is its least fragment
  for ( const auto& [f, owner] : trace.fragment_index )
  {
    if ( !seen[owner] )
    {
      mapping.sets[owner] = f;
      seen[owner] = true;
    }
  }
  if ( std::find( seen.begin(), seen.end(), false ) != seen.end() )
  {
    throw invalid_mapping( "compression trace leaves a concept without fragments" );
  }
  return mapping;
}

std::optional<clash_witness> find_clash( const concept_class& cls, const teacher_mapping& mapping )
{
  if ( mapping.sets.size() != cls.size() )
  {
    throw invalid_mapping( "mapping covers " + std::to_string( mapping.sets.size() ) + " concepts, class has " +
                           std::to_string( cls.size() ) );
  }
  for ( std::size_t i = 0; i < cls.size(); ++i )
  {
    if ( !consistent( cls, i, mapping.sets[i] ) )
    {
      throw invalid_mapping( "teaching set of " + concept_name( i ) + " is not consistent with it" );
    }
  }
  for ( std::size_t i = 0; i < cls.size(); ++i )
  {
    for ( std::size_t j = i + 1; j < cls.size(); ++j )
    {
      if ( consistent( cls[j], mapping.sets[i] ) && consistent( cls[i], mapping.sets[j] ) )
      {
        return clash_witness{ i, j };
      }
    }
  }
  return std::nullopt;
}

fragment min_teaching_set( const concept_class& cls, std::size_t concept_index )
{
  const auto target = cls[concept_index];
  std::vector<std::uint64_t> diffs;
  for ( std::size_t j = 0; j < cls.size(); ++j )
  {
    if ( j != concept_index )
    {
      diffs.push_back( cls[j] ^ target );
    }
  }
  const auto n = cls.num_instances();
  for ( std::size_t k = 0; k <= n; ++k )
  {
    for ( const auto& subset : combinations( n, k ) )
    {
      const auto mask = subset_mask( subset, n );
      if ( std::all_of( diffs.begin(), diffs.end(), [mask]( auto d ) { return ( d & mask ) != 0; } ) )
      {
        return project( target, mask );
      }
    }
  }
  throw error( "no teaching set found; concepts are not distinct" );
}

std::size_t teaching_dimension( const concept_class& cls )
{
  std::size_t td = 0;
  for ( std::size_t i = 0; i < cls.size(); ++i )
  {
    td = std::max( td, min_teaching_set( cls, i ).size() );
  }
  return td;
}

std::vector<std::size_t> one_inclusion_degrees( const concept_class& cls )
{
  std::vector<std::size_t> degree( cls.size(), 0 );
  for ( std::size_t i = 0; i < cls.size(); ++i )
  {
    for ( std::size_t j = i + 1; j < cls.size(); ++j )
    {
      if ( std::popcount( cls[i] ^ cls[j] ) == 1 )
      {
        ++degree[i];
        ++degree[j];
      }
    }
  }
  return degree;
}

fraction average_degree( const concept_class& cls )
{
  const auto degree = one_inclusion_degrees( cls );
  return fraction::reduced( std::accumulate( degree.begin(), degree.end(), std::uint64_t{ 0 } ), cls.size() );
}

std::size_t degree_lower_bound( const concept_class& cls )
{
  const auto avg = average_degree( cls );
  return static_cast<std::size_t>( fraction::reduced( avg.num, 2 * avg.den ).ceil() );
}

namespace
{

class nctd_search
{
public:
  nctd_search( const concept_class& cls, std::size_t k, std::uint64_t& nodes, std::uint64_t budget )
      : m_( cls.size() ), nodes_( nodes ), budget_( budget ), hit_( cls.size(), 0 ), candidates_( cls.size() )
  {
    const auto subsets = combinations( cls.num_instances(), std::min( k, cls.num_instances() ) );
    for ( std::size_t i = 0; i < m_; ++i )
    {
      std::vector<std::uint64_t> sets;
      for ( const auto& subset : subsets )
      {
        const auto f = project( cls[i], subset_mask( subset, cls.num_instances() ) );
        std::uint64_t set = 0;
        for ( std::size_t j = 0; j < m_; ++j )
        {
          if ( consistent( cls[j], f ) )
          {
            set |= std::uint64_t{ 1 } << j;
          }
        }
        sets.push_back( set );
      }
      // a set contained in another clashes with no more concepts, so only minimal sets matter
      std::sort( sets.begin(), sets.end(), []( auto a, auto b ) {
        return std::popcount( a ) != std::popcount( b ) ? std::popcount( a ) < std::popcount( b ) : a < b;
      } );
      sets.erase( std::unique( sets.begin(), sets.end() ), sets.end() );
      for ( auto s : sets )
      {
        if ( std::none_of( candidates_[i].begin(), candidates_[i].end(), [s]( auto c ) { return ( c & s ) == c; } ) )
        {
          candidates_[i].push_back( s );
        }
      }
      usable_.push_back( candidates_[i].size() );
      // a set naming only its own concept can never clash
      if ( std::popcount( candidates_[i].front() ) == 1 )
      {
        assigned_ |= std::uint64_t{ 1 } << i;
        ++settled_;
      }
    }
  }

  /*! Returns true on success, false on proven infeasibility; sets `out_of_budget` otherwise. */
  bool run()
  {
    return descend();
  }

  bool out_of_budget = false;

private:
  bool usable( std::size_t t, std::uint64_t candidate ) const { return ( candidate & hit_[t] ) == 0; }

  /* Adds `bit` to hit_[t], keeping the usable-candidate count in step. */
  void hit( std::size_t t, std::uint64_t bit )
  {
    for ( auto c : candidates_[t] )
    {
      usable_[t] -= ( c & bit ) && !( c & hit_[t] );
    }
    hit_[t] |= bit;
  }

  void unhit( std::size_t t, std::uint64_t bit )
  {
    hit_[t] &= ~bit;
    for ( auto c : candidates_[t] )
    {
      usable_[t] += ( c & bit ) && !( c & hit_[t] );
    }
  }

  bool descend()
  {
    if ( settled_ == m_ )
    {
      return true;
    }
    // most constrained unassigned concept first, lowest index on ties
    std::size_t i = m_, best = SIZE_MAX;
    for ( std::size_t t = 0; t < m_; ++t )
    {
      if ( !( ( assigned_ >> t ) & 1u ) )
      {
        if ( usable_[t] < best )
        {
          best = usable_[t];
          i = t;
        }
      }
    }
    if ( best == 0 )
    {
      return false;
    }
    const auto bit = std::uint64_t{ 1 } << i;
    assigned_ |= bit;
    ++settled_;
    for ( auto candidate : candidates_[i] )
    {
      if ( !usable( i, candidate ) )
      {
        continue;
      }
      if ( ++nodes_ > budget_ )
      {
        out_of_budget = true;
        break;
      }
      const auto others = candidate & ~bit;
      for ( auto t = others; t; t &= t - 1 )
      {
        hit( static_cast<std::size_t>( std::countr_zero( t ) ), bit );
      }
      // forward check: unassigned concepts that just got hit must keep a usable candidate
      bool alive = true;
      for ( auto t = others & ~assigned_; t && alive; t &= t - 1 )
      {
        alive = usable_[std::countr_zero( t )] > 0;
      }
      if ( alive && descend() )
      {
        return true;
      }
      for ( auto t = others; t; t &= t - 1 )
      {
        unhit( static_cast<std::size_t>( std::countr_zero( t ) ), bit );
      }
      if ( out_of_budget )
      {
        break;
      }
    }
    assigned_ &= ~bit;
    --settled_;
    return false;
  }

  std::size_t m_;
  std::uint64_t& nodes_;
  std::uint64_t budget_;
  std::uint64_t assigned_ = 0;
  std::size_t settled_ = 0;
  // hit_[t]: assigned concepts whose teaching set is consistent with concept t
  std::vector<std::uint64_t> hit_;
  // usable_[t]: candidates of t disjoint from hit_[t]
  std::vector<std::size_t> usable_;
  // inclusion-minimal consistent sets of the size-k fragments of each concept
  std::vector<std::vector<std::uint64_t>> candidates_;
};

} // namespace

nctd_result nctd_exact( const concept_class& cls, std::uint64_t budget )
{
  if ( budget == 0 )
  {
    throw error( "search budget must be positive" );
  }
  if ( cls.size() > 64 )
  {
    throw error( "exact NCTD search is limited to 64 concepts" );
  }
  nctd_result result;
  // every teaching-set mapping is non-clashing, so TD is a sound fallback upper bound
  result.upper = teaching_dimension( cls );
  for ( auto k = degree_lower_bound( cls ); k <= cls.num_instances(); ++k )
  {
    result.lower = k;
    if ( k >= result.upper )
    {
      result.value = result.upper;
      result.lower = result.upper;
      return result;
    }
    nctd_search search( cls, k, result.nodes, budget );
    if ( search.run() )
    {
      result.value = k;
      result.upper = k;
      return result;
    }
    if ( search.out_of_budget )
    {
      return result;
    }
  }
  throw error( "exact NCTD search found no mapping up to the domain size" );
}

bounds_report compute_bounds( const concept_class& cls, std::uint64_t budget )
{
  bounds_report report;
  report.vcdim = vc_dimension( cls ).dimension;
  report.td = teaching_dimension( cls );
  report.nctd_lower = degree_lower_bound( cls );
  report.deg_avg = average_degree( cls );
  auto outcome = run_ordered_compression( cls );
  if ( auto* trace = std::get_if<compression_trace>( &outcome ) )
  {
    const auto mapping = build_teacher_mapping( *trace );
    report.nctd_upper = mapping.order();
    report.mapping_non_clashing = is_non_clashing( cls, mapping );
  }
  report.nctd = nctd_exact( cls, budget );
  return report;
}

} // namespace conceptlab
