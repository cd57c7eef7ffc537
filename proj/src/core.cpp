#include "conceptlab/core.hpp"

#include <algorithm>
#include <unordered_set>

namespace conceptlab
{

fragment make_fragment( std::span<const std::pair<std::size_t, int>> entries )
{
  fragment f;
  for ( auto [instance, label] : entries )
  {
    if ( instance >= max_instances )
    {
      throw malformed_fragment( "instance index " + std::to_string( instance ) + " out of range" );
    }
    if ( label != 0 && label != 1 )
    {
      throw malformed_fragment( "label must be 0 or 1" );
    }
    const auto bit = std::uint64_t{ 1 } << instance;
    if ( f.mask & bit )
    {
      throw malformed_fragment( "instance " + std::to_string( instance ) + " appears twice" );
    }
    f.mask |= bit;
    if ( label )
    {
      f.values |= bit;
    }
  }
  return f;
}

std::vector<std::pair<std::size_t, int>> entries( const fragment& f )
{
  std::vector<std::pair<std::size_t, int>> out;
  out.reserve( f.size() );
  for ( auto m = f.mask; m; m &= m - 1 )
  {
    const auto i = static_cast<std::size_t>( std::countr_zero( m ) );
    out.emplace_back( i, static_cast<int>( ( f.values >> i ) & 1u ) );
  }
  return out;
}

bool fragment_less( const fragment& a, const fragment& b ) noexcept
{
  // walk both index tuples in ascending order
  auto ma = a.mask, mb = b.mask;
  while ( ma && mb )
  {
    const auto ia = std::countr_zero( ma ), ib = std::countr_zero( mb );
    if ( ia != ib )
    {
      return ia < ib;
    }
    ma &= ma - 1;
    mb &= mb - 1;
  }
  if ( ma || mb )
  {
    return mb != 0; // a is a proper prefix of b
  }
  // same subset; the first differing label decides, first instance most significant
  const auto diff = a.values ^ b.values;
  if ( diff == 0 )
  {
    return false;
  }
  const auto first = std::countr_zero( diff );
  return ( ( a.values >> first ) & 1u ) == 0;
}

fragment to_fragment( const label_pattern& p )
{
  if ( p.subset.size() != p.labels.size() )
  {
    throw malformed_fragment( "label pattern arity mismatch" );
  }
  std::vector<std::pair<std::size_t, int>> e;
  for ( std::size_t k = 0; k < p.subset.size(); ++k )
  {
    if ( k > 0 && p.subset[k] <= p.subset[k - 1] )
    {
      throw malformed_fragment( "label pattern subset must be strictly increasing" );
    }
    e.emplace_back( p.subset[k], p.labels[k] );
  }
  return make_fragment( e );
}

label_pattern to_label_pattern( const fragment& f )
{
  label_pattern p;
  for ( auto [i, l] : entries( f ) )
  {
    p.subset.push_back( i );
    p.labels.push_back( l );
  }
  return p;
}

std::uint64_t subset_mask( std::span<const std::size_t> subset, std::size_t num_instances )
{
  std::uint64_t mask = 0;
  for ( std::size_t k = 0; k < subset.size(); ++k )
  {
    if ( subset[k] >= num_instances )
    {
      throw malformed_subset( "instance index " + std::to_string( subset[k] ) + " out of range" );
    }
    if ( k > 0 && subset[k] <= subset[k - 1] )
    {
      throw malformed_subset( "subset must be strictly increasing" );
    }
    mask |= std::uint64_t{ 1 } << subset[k];
  }
  return mask;
}

fragment pattern_fragment( std::span<const std::size_t> subset, std::uint32_t pattern )
{
  fragment f;
  const auto d = subset.size();
  for ( std::size_t k = 0; k < d; ++k )
  {
    const auto bit = std::uint64_t{ 1 } << subset[k];
    f.mask |= bit;
    if ( ( pattern >> ( d - 1 - k ) ) & 1u )
    {
      f.values |= bit;
    }
  }
  return f;
}

std::vector<std::vector<std::size_t>> combinations( std::size_t n, std::size_t k )
{
  std::vector<std::vector<std::size_t>> out;
  if ( k > n )
  {
    return out;
  }
  std::vector<std::size_t> idx( k );
  for ( std::size_t i = 0; i < k; ++i )
  {
    idx[i] = i;
  }
  while ( true )
  {
    out.push_back( idx );
    // rightmost position that can still advance
    std::size_t pos = k;
    while ( pos > 0 && idx[pos - 1] == n - k + pos - 1 )
    {
      --pos;
    }
    if ( pos == 0 )
    {
      break;
    }
    ++idx[pos - 1];
    for ( auto j = pos; j < k; ++j )
    {
      idx[j] = idx[j - 1] + 1;
    }
  }
  return out;
}

std::uint64_t binomial( std::uint64_t n, std::uint64_t k )
{
  if ( k > n )
  {
    return 0;
  }
  k = std::min( k, n - k );
  unsigned __int128 r = 1;
  for ( std::uint64_t i = 1; i <= k; ++i )
  {
    r = r * ( n - k + i ) / i;
    if ( r > UINT64_MAX )
    {
      return UINT64_MAX;
    }
  }
  return static_cast<std::uint64_t>( r );
}

concept_class::concept_class( std::vector<std::string> instance_names, std::vector<concept_bits> concepts )
    : names_( std::move( instance_names ) ), concepts_( std::move( concepts ) )
{
  if ( names_.empty() )
  {
    throw invalid_class( "a concept class needs at least one instance" );
  }
  if ( names_.size() > max_instances )
  {
    throw invalid_class( "at most " + std::to_string( max_instances ) + " instances are supported" );
  }
  if ( concepts_.empty() )
  {
    throw invalid_class( "a concept class needs at least one concept" );
  }
  std::unordered_set<std::string> seen_names;
  for ( const auto& name : names_ )
  {
    if ( name.empty() || !seen_names.insert( name ).second )
    {
      throw invalid_class( "instance names must be nonempty and distinct" );
    }
  }
  const auto dom = domain_mask();
  std::unordered_set<concept_bits> seen;
  for ( std::size_t i = 0; i < concepts_.size(); ++i )
  {
    if ( concepts_[i] & ~dom )
    {
      throw invalid_class( "concept " + concept_name( i ) + " has labels outside the domain" );
    }
    if ( !seen.insert( concepts_[i] ).second )
    {
      throw duplicate_concept( "duplicate concept " + concept_name( i ) );
    }
  }
}

concept_class::concept_class( std::size_t num_instances, std::vector<concept_bits> concepts )
    : concept_class(
          [num_instances] {
            std::vector<std::string> names;
            for ( std::size_t i = 0; i < num_instances; ++i )
            {
              names.push_back( default_instance_name( i ) );
            }
            return names;
          }(),
          std::move( concepts ) )
{
}

concept_class concept_class::from_rows( std::span<const std::string> rows )
{
  if ( rows.empty() )
  {
    throw invalid_class( "a concept class needs at least one concept" );
  }
  const auto n = rows.front().size();
  std::vector<concept_bits> concepts;
  for ( const auto& r : rows )
  {
    if ( r.size() != n )
    {
      throw invalid_class( "concept rows have different lengths" );
    }
    if ( n > max_instances )
    {
      throw invalid_class( "at most " + std::to_string( max_instances ) + " instances are supported" );
    }
    concept_bits c = 0;
    for ( std::size_t i = 0; i < n; ++i )
    {
      if ( r[i] == '1' )
      {
        c |= concept_bits{ 1 } << i;
      }
      else if ( r[i] != '0' )
      {
        throw invalid_class( "concept rows may only contain 0 and 1" );
      }
    }
    concepts.push_back( c );
  }
  return concept_class( n, std::move( concepts ) );
}

std::string concept_class::row( std::size_t concept_index ) const
{
  std::string s( num_instances(), '0' );
  for ( std::size_t i = 0; i < s.size(); ++i )
  {
    if ( label( concept_index, i ) )
    {
      s[i] = '1';
    }
  }
  return s;
}

std::uint64_t concept_class::domain_mask() const noexcept
{
  return names_.size() == 64 ? ~std::uint64_t{ 0 } : ( std::uint64_t{ 1 } << names_.size() ) - 1;
}

bool consistent( const concept_class& cls, std::size_t concept_index, const fragment& f )
{
  if ( f.mask & ~cls.domain_mask() )
  {
    throw malformed_fragment( "fragment refers to an instance outside the domain" );
  }
  if ( concept_index >= cls.size() )
  {
    throw error( "concept index " + std::to_string( concept_index ) + " out of range" );
  }
  return consistent( cls[concept_index], f );
}

std::vector<std::uint32_t> restriction( const concept_class& cls, std::span<const std::size_t> subset )
{
  subset_mask( subset, cls.num_instances() );
  if ( subset.size() > 32 )
  {
    throw malformed_subset( "restriction is limited to subsets of at most 32 instances" );
  }
  std::vector<std::uint32_t> out;
  out.reserve( cls.size() );
  for ( auto c : cls.concepts() )
  {
    out.push_back( pattern_of( c, subset ) );
  }
  std::sort( out.begin(), out.end() );
  out.erase( std::unique( out.begin(), out.end() ), out.end() );
  return out;
}

std::string concept_name( std::size_t concept_index )
{
  return "C" + std::to_string( concept_index + 1 );
}

std::string default_instance_name( std::size_t instance )
{
  return "x" + std::to_string( instance + 1 );
}

} // namespace conceptlab
