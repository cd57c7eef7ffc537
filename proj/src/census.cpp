#include "conceptlab/census.hpp"

#include <algorithm>
#include <chrono>
#include <mutex>
#include <numeric>
#include <random>
#include <sstream>
#include <thread>
#include <unordered_set>

#include "conceptlab/compression.hpp"
#include "conceptlab/io.hpp"
#include "conceptlab/teaching.hpp"
#include "conceptlab/vc.hpp"

namespace conceptlab
{

std::string_view to_string( check_kind check )
{
  switch ( check )
  {
  case check_kind::lemma1:
    return "lemma1";
  case check_kind::no_stall:
    return "no_stall";
  case check_kind::non_clash:
    return "non_clash";
  case check_kind::nctd_le_vcdim:
    return "nctd_le_vcdim";
  }
  return "unknown";
}

std::optional<check_kind> parse_check_kind( std::string_view name )
{
  for ( auto c : all_checks )
  {
    if ( to_string( c ) == name )
    {
      return c;
    }
  }
  return std::nullopt;
}

std::string_view to_string( check_status status )
{
  switch ( status )
  {
  case check_status::pass:
    return "pass";
  case check_status::fail:
    return "fail";
  case check_status::inconclusive:
    return "inconclusive";
  }
  return "unknown";
}

namespace
{

std::string join_indices( std::span<const std::size_t> idx )
{
  std::string s;
  for ( auto i : idx )
  {
    s += ( s.empty() ? "" : " " ) + concept_name( i );
  }
  return s;
}

/* Verifies the per-round and whole-trace postconditions of ordered compression. */
std::optional<std::string> trace_violation( const compression_trace& trace )
{
  const auto& cls = trace.cls;
  const auto per_subset_total = binomial( cls.num_instances(), trace.d );
  std::vector<std::size_t> assigned_in( cls.size(), 0 );
  std::size_t prev_vcdim = trace.d;
  for ( const auto& r : trace.rounds )
  {
    std::ostringstream where;
    where << "round " << r.round_index << ": ";
    if ( r.table.total() != r.pool_before.size() * per_subset_total )
    {
      return where.str() + "frequency counts do not sum to |pool| * C(n, d)";
    }
    if ( r.pool_after.size() >= r.pool_before.size() )
    {
      return where.str() + "pool did not shrink";
    }
    std::vector<concept_bits> pool;
    for ( auto i : r.pool_before )
    {
      pool.push_back( cls[i] );
    }
    const auto pool_vcdim = vc_dimension( pool, cls.num_instances() ).dimension;
    if ( pool_vcdim > prev_vcdim )
    {
      return where.str() + "pool VC dimension increased";
    }
    prev_vcdim = pool_vcdim;
    for ( const auto& a : r.assignments )
    {
      if ( r.table.count_of( a.frag ) != 1 || !consistent( cls[a.concept_index], a.frag ) )
      {
        return where.str() + "assigned fragment does not have frequency 1 for " + concept_name( a.concept_index );
      }
      if ( assigned_in[a.concept_index] != 0 && assigned_in[a.concept_index] != r.round_index )
      {
        return where.str() + concept_name( a.concept_index ) + " assigned in two rounds";
      }
      assigned_in[a.concept_index] = r.round_index;
    }
    // an assigned fragment must vanish from every later table
    for ( const auto& later : trace.rounds )
    {
      if ( later.round_index <= r.round_index )
      {
        continue;
      }
      for ( const auto& a : r.assignments )
      {
        if ( later.table.count_of( a.frag ) != 0 )
        {
          return where.str() + "assigned fragment reappears in round " + std::to_string( later.round_index );
        }
      }
    }
  }
  for ( std::size_t i = 0; i < cls.size(); ++i )
  {
    if ( assigned_in[i] == 0 )
    {
      return concept_name( i ) + " received no fragment";
    }
  }
  return std::nullopt;
}

check_outcome check_lemma1_outcome( const concept_class& cls )
{
  check_outcome out;
  const auto vc = vc_dimension( cls );
  out.vcdim = vc.dimension;
  const auto bound = sauer_sum_bound( cls, vc.dimension );
  std::ostringstream ev;
  ev << "m=" << cls.size() << " d=" << vc.dimension << " bound=" << bound;
  out.evidence = ev.str();
  out.status = cls.size() <= bound ? check_status::pass : check_status::fail;
  return out;
}

check_outcome check_no_stall( const concept_class& cls )
{
  check_outcome out;
  auto outcome = run_ordered_compression( cls );
  if ( const auto* s = std::get_if<stall>( &outcome ) )
  {
    out.status = check_status::fail;
    out.evidence = "stall in round " + std::to_string( s->round_index ) + " with pool " + join_indices( s->pool );
    return out;
  }
  const auto& trace = std::get<compression_trace>( outcome );
  out.vcdim = trace.d;
  if ( auto v = trace_violation( trace ) )
  {
    out.status = check_status::fail;
    out.evidence = *v;
    return out;
  }
  out.evidence = std::to_string( trace.rounds.size() ) + " rounds, " + std::to_string( trace.fragment_index.size() ) +
                 " fragments assigned";
  return out;
}

check_outcome check_non_clash( const concept_class& cls )
{
  check_outcome out;
  auto outcome = run_ordered_compression( cls );
  if ( std::holds_alternative<stall>( outcome ) )
  {
    out.status = check_status::inconclusive;
    out.evidence = "compression stalled; no mapping to check";
    return out;
  }
  const auto& trace = std::get<compression_trace>( outcome );
  out.vcdim = trace.d;
  const auto mapping = build_teacher_mapping( trace );
  if ( mapping.order() != trace.d )
  {
    out.status = check_status::fail;
    out.evidence = "mapping order " + std::to_string( mapping.order() ) + " differs from d=" + std::to_string( trace.d );
    return out;
  }
  if ( auto w = find_clash( cls, mapping ) )
  {
    out.status = check_status::fail;
    out.evidence = "clash between " + concept_name( w->first ) + " and " + concept_name( w->second );
    return out;
  }
  out.evidence = "order " + std::to_string( mapping.order() ) + ", " +
                 std::to_string( binomial( cls.size(), 2 ) ) + " pairs non-clashing";
  return out;
}

check_outcome check_nctd( const concept_class& cls, std::uint64_t budget )
{
  check_outcome out;
  out.vcdim = vc_dimension( cls ).dimension;
  const auto lower = degree_lower_bound( cls );
  const auto td = teaching_dimension( cls );
  nctd_result r;
  try
  {
    r = nctd_exact( cls, budget );
  }
  catch ( const error& e )
  {
    out.status = check_status::inconclusive;
    out.evidence = e.what();
    return out;
  }
  std::ostringstream ev;
  ev << "vcdim=" << out.vcdim << " td=" << td << " lower=" << lower;
  if ( r.exhausted() )
  {
    ev << " nctd in [" << r.lower << "," << r.upper << "] budget exhausted";
    out.evidence = ev.str();
    // an undecided search can still refute the bound outright
    out.status = r.lower > out.vcdim ? check_status::fail : check_status::inconclusive;
    return out;
  }
  out.nctd = *r.value;
  ev << " nctd=" << *r.value;
  out.evidence = ev.str();
  const auto ok = lower <= *r.value && *r.value <= std::min( out.vcdim, td );
  out.status = ok ? check_status::pass : check_status::fail;
  return out;
}

std::once_flag symmetry_once[7];
std::vector<std::vector<std::uint8_t>> symmetry_maps[7];

/* Code permutations induced by instance permutations composed with label flips. */
const std::vector<std::vector<std::uint8_t>>& symmetries( std::size_t n )
{
  std::call_once( symmetry_once[n], [n] {
    std::vector<std::size_t> perm( n );
    std::iota( perm.begin(), perm.end(), 0 );
    const std::size_t codes = std::size_t{ 1 } << n;
    do
    {
      for ( std::size_t flip = 0; flip < codes; ++flip )
      {
        std::vector<std::uint8_t> map( codes );
        for ( std::size_t c = 0; c < codes; ++c )
        {
          std::size_t image = 0;
          const auto flipped = c ^ flip;
          for ( std::size_t i = 0; i < n; ++i )
          {
            image |= ( ( flipped >> i ) & 1u ) << perm[i];
          }
          map[c] = static_cast<std::uint8_t>( image );
        }
        symmetry_maps[n].push_back( std::move( map ) );
      }
    } while ( std::next_permutation( perm.begin(), perm.end() ) );
  } );
  return symmetry_maps[n];
}

std::uint64_t bounded( std::mt19937_64& rng, std::uint64_t bound )
{
  // rejection sampling keeps the draw exact and platform independent
  const auto limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x;
  do
  {
    x = rng();
  } while ( x >= limit );
  return x % bound;
}

struct class_report
{
  std::vector<std::pair<check_kind, check_outcome>> outcomes;
};

class_report check_class( const concept_class& cls, const census_config& config )
{
  class_report rep;
  for ( auto check : config.checks )
  {
    rep.outcomes.emplace_back( check, run_check( cls, check, config.budget ) );
  }
  return rep;
}

} // namespace

check_outcome run_check( const concept_class& cls, check_kind check, std::uint64_t budget )
{
  try
  {
    switch ( check )
    {
    case check_kind::lemma1:
      return check_lemma1_outcome( cls );
    case check_kind::no_stall:
      return check_no_stall( cls );
    case check_kind::non_clash:
      return check_non_clash( cls );
    case check_kind::nctd_le_vcdim:
      return check_nctd( cls, budget );
    }
  }
  catch ( const error& e )
  {
    // internal invariant violations are findings, not crashes
    return { check_status::fail, std::string( "error: " ) + e.what(), std::nullopt, 0 };
  }
  return {};
}

std::uint64_t census_result::total_failures() const
{
  std::uint64_t total = 0;
  for ( const auto& [check, tally] : tallies )
  {
    total += tally.failed;
  }
  return total;
}

concept_class builtin_c1()
{
  const std::vector<std::string> rows{ "0001", "0010", "0011", "0100", "0101",
                                       "0110", "0111", "1001", "1010", "1100" };
  return concept_class::from_rows( rows );
}

std::uint64_t class_mask( const concept_class& cls )
{
  if ( cls.num_instances() > 6 )
  {
    throw error( "class masks need n <= 6" );
  }
  std::uint64_t mask = 0;
  for ( auto c : cls.concepts() )
  {
    mask |= std::uint64_t{ 1 } << c;
  }
  return mask;
}

concept_class class_from_mask( std::size_t n, std::uint64_t mask )
{
  if ( n == 0 || n > 6 )
  {
    throw error( "class masks need 1 <= n <= 6" );
  }
  std::vector<concept_bits> concepts;
  for ( auto m = mask; m; m &= m - 1 )
  {
    concepts.push_back( static_cast<concept_bits>( std::countr_zero( m ) ) );
  }
  return concept_class( n, std::move( concepts ) );
}

std::uint64_t canonical_mask( std::size_t n, std::uint64_t mask )
{
  if ( n == 0 || n > 6 )
  {
    throw error( "canonical masks need 1 <= n <= 6" );
  }
  auto best = mask;
  for ( const auto& map : symmetries( n ) )
  {
    std::uint64_t image = 0;
    for ( auto m = mask; m; m &= m - 1 )
    {
      image |= std::uint64_t{ 1 } << map[std::countr_zero( m )];
    }
    best = std::min( best, image );
  }
  return best;
}

class_enumerator::class_enumerator( const census_config& config ) : n_( config.n ), dedup_( config.dedup )
{
  if ( n_ == 0 || n_ > 6 )
  {
    throw infeasible_enumeration( "exhaustive enumeration supports 1 <= n <= 6" );
  }
  const std::size_t codes = std::size_t{ 1 } << n_;
  const auto max_size = config.max_size == 0 ? codes : std::min( config.max_size, codes );
  const auto min_size = std::max<std::size_t>( config.min_size, 1 );
  limit_ = static_cast<unsigned __int128>( 1 ) << codes;
  heads_.resize( codes + 1 );
  for ( auto s = min_size; s <= max_size; ++s )
  {
    const auto b = binomial( codes, s );
    space_ = ( b > enumeration_cap || space_ + b > enumeration_cap ) ? enumeration_cap + 1 : space_ + b;
    heads_[s] = ( static_cast<unsigned __int128>( 1 ) << s ) - 1;
  }
  if ( space_ > enumeration_cap )
  {
    throw infeasible_enumeration( "exhaustive census over n = " + std::to_string( n_ ) + " exceeds " +
                                  std::to_string( enumeration_cap ) + " classes; cap the class size" );
  }
}

std::optional<std::uint64_t> class_enumerator::next_mask()
{
  while ( true )
  {
    std::optional<std::size_t> pick;
    for ( std::size_t s = 0; s < heads_.size(); ++s )
    {
      if ( heads_[s] && ( !pick || *heads_[s] < *heads_[*pick] ) )
      {
        pick = s;
      }
    }
    if ( !pick )
    {
      return std::nullopt;
    }
    const auto x = *heads_[*pick];
    // Gosper's hack: next larger value with the same popcount
    const auto c = x & ( ~x + 1 );
    const auto r = x + c;
    const auto next = ( ( ( r ^ x ) >> 2 ) / c ) | r;
    heads_[*pick] = next < limit_ ? std::optional{ next } : std::nullopt;
    const auto mask = static_cast<std::uint64_t>( x );
    if ( !dedup_ || canonical_mask( n_, mask ) == mask )
    {
      return mask;
    }
  }
}

std::optional<concept_class> class_enumerator::next()
{
  if ( auto m = next_mask() )
  {
    return class_from_mask( n_, *m );
  }
  return std::nullopt;
}

concept_class random_class( std::size_t n, std::size_t m, std::uint64_t seed )
{
  if ( n == 0 || n > 63 )
  {
    throw error( "random classes need 1 <= n <= 63" );
  }
  const auto codes = std::uint64_t{ 1 } << n;
  if ( m == 0 || m > codes )
  {
    throw error( "class size " + std::to_string( m ) + " is out of range for n = " + std::to_string( n ) );
  }
  std::mt19937_64 rng( seed );
  std::vector<concept_bits> concepts;
  concepts.reserve( m );
  if ( n <= 20 )
  {
    // partial Fisher-Yates over all codes
    std::vector<concept_bits> pool( codes );
    std::iota( pool.begin(), pool.end(), concept_bits{ 0 } );
    for ( std::size_t i = 0; i < m; ++i )
    {
      const auto j = i + bounded( rng, codes - i );
      std::swap( pool[i], pool[j] );
      concepts.push_back( pool[i] );
    }
  }
  else
  {
    std::unordered_set<concept_bits> seen;
    while ( concepts.size() < m )
    {
      const auto c = bounded( rng, codes );
      if ( seen.insert( c ).second )
      {
        concepts.push_back( c );
      }
    }
  }
  return concept_class( n, std::move( concepts ) );
}

census_result run_census( const census_config& config )
{
  const auto start = std::chrono::steady_clock::now();
  if ( config.n == 0 )
  {
    throw error( "census needs n >= 1" );
  }

  census_result result;
  result.n = config.n;
  for ( auto check : config.checks )
  {
    result.tallies[check];
  }

  auto threads = config.threads == 0 ? std::max( 1u, std::thread::hardware_concurrency() ) : config.threads;

  std::optional<class_enumerator> stream;
  std::optional<std::mt19937_64> rng;
  std::size_t sampled = 0;
  std::size_t min_size = std::max<std::size_t>( config.min_size, 1 );
  std::size_t max_size = 0;
  if ( config.sample_count == 0 )
  {
    stream.emplace( config );
  }
  else
  {
    if ( config.n > 20 )
    {
      throw error( "sampling supports n <= 20" );
    }
    rng.emplace( config.seed );
    const std::size_t codes = std::size_t{ 1 } << config.n;
    max_size = config.max_size == 0 ? codes : std::min( config.max_size, codes );
    if ( min_size > max_size )
    {
      throw error( "empty class size range" );
    }
  }

  constexpr std::size_t chunk = 4096;
  bool stop = false;
  while ( !stop )
  {
    std::vector<concept_class> batch;
    while ( batch.size() < chunk )
    {
      if ( stream )
      {
        auto cls = stream->next();
        if ( !cls )
        {
          break;
        }
        batch.push_back( std::move( *cls ) );
      }
      else
      {
        if ( sampled == config.sample_count )
        {
          break;
        }
        const auto m = min_size + bounded( *rng, max_size - min_size + 1 );
        batch.push_back( random_class( config.n, m, ( *rng )() ) );
        ++sampled;
      }
    }
    if ( batch.empty() )
    {
      break;
    }

    // contiguous slices per worker; merged below in stream order
    std::vector<class_report> reports( batch.size() );
    const auto workers = std::min<std::size_t>( threads, batch.size() );
    std::vector<std::thread> pool;
    for ( std::size_t w = 0; w < workers; ++w )
    {
      pool.emplace_back( [&, w] {
        const auto lo = batch.size() * w / workers, hi = batch.size() * ( w + 1 ) / workers;
        for ( auto i = lo; i < hi; ++i )
        {
          reports[i] = check_class( batch[i], config );
        }
      } );
    }
    for ( auto& t : pool )
    {
      t.join();
    }

    for ( std::size_t i = 0; i < batch.size() && !stop; ++i )
    {
      ++result.classes_checked;
      for ( const auto& [check, out] : reports[i].outcomes )
      {
        auto& tally = result.tallies[check];
        switch ( out.status )
        {
        case check_status::pass:
          ++tally.passed;
          break;
        case check_status::fail:
          ++tally.failed;
          break;
        case check_status::inconclusive:
          ++tally.inconclusive;
          break;
        }
        if ( out.nctd )
        {
          ++result.histogram[{ out.vcdim, *out.nctd }];
        }
        if ( out.status != check_status::pass )
        {
          auto& list = out.status == check_status::fail ? result.failures : result.undecided;
          list.push_back( { serialize_class( batch[i] ), check, out.status, out.evidence, config.budget } );
          if ( out.status == check_status::fail && config.stop_on_failure )
          {
            stop = true;
          }
        }
      }
    }
  }

  result.wall_seconds = std::chrono::duration<double>( std::chrono::steady_clock::now() - start ).count();
  return result;
}

bool replay( const failure_witness& witness )
{
  const auto cls = parse_class( witness.class_text );
  const auto out = run_check( cls, witness.check, witness.budget );
  return out.status == witness.status && out.evidence == witness.evidence;
}

} // namespace conceptlab
