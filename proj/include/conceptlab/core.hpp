#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"

namespace conceptlab
{

/*! \brief Largest supported domain size; concepts are packed into one word. */
inline constexpr std::size_t max_instances = 64;

/*! \brief A concept as a packed label vector: bit i holds the label of instance i. */
using concept_bits = std::uint64_t;

/*! \brief A labeled subsample stored as (mask, value) bit pairs.

  Bit i of `mask` marks instance i as present; bit i of `values` is its
  label. Bits of `values` outside `mask` are always zero. The entry set is
  therefore canonically ordered by ascending instance index.
*/
struct fragment
{
  std::uint64_t mask = 0;
  std::uint64_t values = 0;

  std::size_t size() const noexcept { return static_cast<std::size_t>( std::popcount( mask ) ); }
  bool empty() const noexcept { return mask == 0; }

  friend bool operator==( const fragment&, const fragment& ) = default;
};

/*! \brief Builds a fragment from (instance, label) pairs; rejects repeated instances. */
fragment make_fragment( std::span<const std::pair<std::size_t, int>> entries );

/*! \brief Ascending (instance, label) entries of a fragment. */
std::vector<std::pair<std::size_t, int>> entries( const fragment& f );

/*! \brief Projects a concept onto the instances in `subset_mask`. */
inline fragment project( concept_bits c, std::uint64_t subset_mask ) noexcept
{
  return { subset_mask, c & subset_mask };
}

/*! \brief Consistency as a two-word test; no range checking. */
inline bool consistent( concept_bits c, const fragment& f ) noexcept
{
  return ( c & f.mask ) == f.values;
}

/*! \brief Lexicographic fragment order.

  Compares the ascending instance-index tuples first, then the label vectors
  read as binary numbers with the first instance most significant.
*/
bool fragment_less( const fragment& a, const fragment& b ) noexcept;

struct fragment_order
{
  bool operator()( const fragment& a, const fragment& b ) const noexcept { return fragment_less( a, b ); }
};

/*! \brief One element of a restriction paired with the instance subset it lives on. */
struct label_pattern
{
  std::vector<std::size_t> subset;
  std::vector<int> labels;

  friend bool operator==( const label_pattern&, const label_pattern& ) = default;
};

fragment to_fragment( const label_pattern& p );
label_pattern to_label_pattern( const fragment& f );

/*! \brief Mask with the bits of `subset` set; validates strict ascent and range. */
std::uint64_t subset_mask( std::span<const std::size_t> subset, std::size_t num_instances );

/*! \brief Label pattern of `c` on `subset` packed with the first subset element as most significant bit. */
inline std::uint32_t pattern_of( concept_bits c, std::span<const std::size_t> subset ) noexcept
{
  std::uint32_t p = 0;
  for ( auto i : subset )
  {
    p = ( p << 1 ) | static_cast<std::uint32_t>( ( c >> i ) & 1u );
  }
  return p;
}

/*! \brief Inverse of `pattern_of`: the fragment on `subset` carrying `pattern`. */
fragment pattern_fragment( std::span<const std::size_t> subset, std::uint32_t pattern );

/*! \brief All k-subsets of {0..n-1} in lexicographic order of their sorted tuples. */
std::vector<std::vector<std::size_t>> combinations( std::size_t n, std::size_t k );

/*! \brief Binomial coefficient; saturates at UINT64_MAX. */
std::uint64_t binomial( std::uint64_t n, std::uint64_t k );

/*! \brief A finite concept class: named instances and an ordered, duplicate-free set of concepts.

  Immutable after construction. Concept order is the input order and every
  downstream iteration order derives from it.
*/
class concept_class
{
public:
  concept_class( std::vector<std::string> instance_names, std::vector<concept_bits> concepts );

  /*! \brief Class over default instance names x1..xn. */
  concept_class( std::size_t num_instances, std::vector<concept_bits> concepts );

  /*! \brief Builds from 0/1 strings, the first character being instance x1. */
  static concept_class from_rows( std::span<const std::string> rows );

  std::size_t num_instances() const noexcept { return names_.size(); }
  std::size_t size() const noexcept { return concepts_.size(); }

  concept_bits operator[]( std::size_t i ) const { return concepts_[i]; }
  std::span<const concept_bits> concepts() const noexcept { return concepts_; }
  const std::vector<std::string>& instance_names() const noexcept { return names_; }

  int label( std::size_t concept_index, std::size_t instance ) const
  {
    return static_cast<int>( ( concepts_[concept_index] >> instance ) & 1u );
  }

  /*! \brief The concept as a 0/1 string in instance order. */
  std::string row( std::size_t concept_index ) const;

  /*! \brief Mask of all valid instance bits. */
  std::uint64_t domain_mask() const noexcept;

  friend bool operator==( const concept_class&, const concept_class& ) = default;

private:
  std::vector<std::string> names_;
  std::vector<concept_bits> concepts_;
};

/*! \brief Range-checked consistency of a class member with a fragment. */
bool consistent( const concept_class& cls, std::size_t concept_index, const fragment& f );

/*! \brief The restriction of the class to `subset`: distinct packed patterns, ascending. */
std::vector<std::uint32_t> restriction( const concept_class& cls, std::span<const std::size_t> subset );

/*! \brief Default display name of a concept, "C1" for index 0. */
std::string concept_name( std::size_t concept_index );

std::string default_instance_name( std::size_t instance );

} // namespace conceptlab
