#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "core.hpp"

namespace conceptlab
{

/*! \brief VC dimension together with one shattered subset of that size. */
struct vc_report
{
  std::size_t dimension = 0;
  std::vector<std::size_t> witness;

  friend bool operator==( const vc_report&, const vc_report& ) = default;
};

/*! \brief True iff the restriction to `subset` realizes all 2^|subset| patterns. */
bool shatters( const concept_class& cls, std::span<const std::size_t> subset );

/*! \brief Shattering test on a bare list of concepts (used for compression pools). */
bool shatters( std::span<const concept_bits> concepts, std::span<const std::size_t> subset );

/*! \brief VC dimension and a lexicographically first witness.

  Subset sizes are scanned upward; since shattering is closed under taking
  subsets, the scan stops at the first size with no shattered subset.
*/
vc_report vc_dimension( const concept_class& cls );
vc_report vc_dimension( std::span<const concept_bits> concepts, std::size_t num_instances );

/*! \brief Sum of |C_X| over all d-subsets X of the domain. */
std::uint64_t sauer_sum_bound( const concept_class& cls, std::size_t d );

/*! \brief |C| <= sauer_sum_bound(C, VCdim(C)). */
bool check_lemma1( const concept_class& cls );

} // namespace conceptlab
