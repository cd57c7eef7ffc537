#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <variant>
#include <vector>

#include "core.hpp"

namespace conceptlab
{

/*! \brief Per-round fragment frequencies.

  Cells are laid out subset-major: subsets in lexicographic order of their
  index tuples, and within each subset the 2^d label patterns in ascending
  binary order (first instance most significant). A cell counts the pool
  concepts consistent with its fragment; zero cells are kept.
*/
struct frequency_table
{
  std::size_t round_index = 1;
  std::size_t d = 0;
  std::size_t pool_size = 0;
  std::vector<std::vector<std::size_t>> subsets;
  std::vector<std::uint32_t> counts;

  std::size_t patterns_per_subset() const noexcept { return std::size_t{ 1 } << d; }

  std::uint32_t count( std::size_t subset_index, std::uint32_t pattern ) const
  {
    return counts[subset_index * patterns_per_subset() + pattern];
  }

  fragment cell_fragment( std::size_t subset_index, std::uint32_t pattern ) const
  {
    return pattern_fragment( subsets[subset_index], pattern );
  }

  /*! \brief Count of the cell holding `f`; `f` must have size d. */
  std::uint32_t count_of( const fragment& f ) const;

  std::uint64_t total() const;

  friend bool operator==( const frequency_table&, const frequency_table& ) = default;
};

struct assignment
{
  fragment frag;
  std::size_t concept_index = 0;

  friend bool operator==( const assignment&, const assignment& ) = default;
};

struct round_record
{
  std::size_t round_index = 1;
  std::vector<std::size_t> pool_before;
  frequency_table table;
  std::vector<assignment> assignments;
  std::vector<std::size_t> pool_after;
};

/*! \brief A round in which a nonempty pool has no frequency-1 cell.

  This is the situation the no-stall property rules out. It is returned as
  data so that callers can report it as a counterexample witness.
*/
struct stall
{
  std::size_t round_index = 1;
  std::vector<std::size_t> pool;
  frequency_table table;
};

/*! \brief Full record of an ordered compression run. */
struct compression_trace
{
  concept_class cls;
  std::size_t d = 0;
  std::vector<round_record> rounds;
  std::map<fragment, std::size_t, fragment_order> fragment_index;

  /*! \brief All fragments assigned to a concept, in lexicographic order. */
  std::vector<fragment> fragments_of( std::size_t concept_index ) const;

  /*! \brief 1-based round in which a concept left the pool. */
  std::size_t round_of( std::size_t concept_index ) const;

  /*! \brief Size-d fragments of the domain that were never assigned, in lexicographic order. */
  std::vector<fragment> unassigned_fragments() const;
};

using round_outcome = std::variant<round_record, stall>;
using compression_outcome = std::variant<compression_trace, stall>;

frequency_table fragment_frequencies( std::span<const concept_bits> pool, std::size_t num_instances, std::size_t d,
                                      std::size_t round_index = 1 );

/*! \brief One round: assign every frequency-1 cell to its concept and drop assigned concepts from the pool. */
round_outcome compression_round( const concept_class& cls, std::span<const std::size_t> pool, std::size_t d,
                                 std::size_t round_index );

/*! \brief Repeats rounds until the pool is empty, with d = VCdim of the whole class throughout. */
compression_outcome run_ordered_compression( const concept_class& cls );

/*! \brief The concept a fragment was assigned to. Throws `unassigned_fragment` otherwise. */
std::size_t reconstruct( const compression_trace& trace, const fragment& f );

} // namespace conceptlab
