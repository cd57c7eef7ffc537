#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "compression.hpp"
#include "core.hpp"

namespace conceptlab
{

/*! \brief One teaching set per concept, indexed like the class. */
struct teacher_mapping
{
  std::vector<fragment> sets;

  /*! \brief Largest teaching set size. */
  std::size_t order() const noexcept;

  friend bool operator==( const teacher_mapping&, const teacher_mapping& ) = default;
};

/*! \brief Two distinct concepts, each consistent with the other's teaching set. */
struct clash_witness
{
  std::size_t first = 0;
  std::size_t second = 0;

  friend bool operator==( const clash_witness&, const clash_witness& ) = default;
};

/*! \brief Exact non-negative fraction kept in lowest terms. */
struct fraction
{
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  static fraction reduced( std::uint64_t num, std::uint64_t den );
  std::uint64_t ceil() const noexcept { return ( num + den - 1 ) / den; }
  double to_double() const noexcept { return static_cast<double>( num ) / static_cast<double>( den ); }

  friend bool operator==( const fraction&, const fraction& ) = default;
};

/*! \brief Picks the lexicographically least assigned fragment of every concept. */
teacher_mapping build_teacher_mapping( const compression_trace& trace );

/*! \brief First clashing pair (i < j, row-major) or nothing.

  Throws `invalid_mapping` when the mapping does not cover every concept or
  a teaching set is inconsistent with its own concept.
*/
std::optional<clash_witness> find_clash( const concept_class& cls, const teacher_mapping& mapping );

inline bool is_non_clashing( const concept_class& cls, const teacher_mapping& mapping )
{
  return !find_clash( cls, mapping ).has_value();
}

/*! \brief Smallest fragment consistent with this concept only; ties go to the lexicographically least. */
fragment min_teaching_set( const concept_class& cls, std::size_t concept_index );

std::size_t teaching_dimension( const concept_class& cls );

/*! \brief Number of concepts at Hamming distance one, per concept. */
std::vector<std::size_t> one_inclusion_degrees( const concept_class& cls );

fraction average_degree( const concept_class& cls );

/*! \brief ceil(deg_avg / 2), computed exactly. */
std::size_t degree_lower_bound( const concept_class& cls );

struct nctd_result
{
  /*! \brief Set when the search finished. */
  std::optional<std::size_t> value;
  /*! \brief Proven bracket; lower == upper == *value once finished. */
  std::size_t lower = 0;
  std::size_t upper = 0;
  std::uint64_t nodes = 0;

  bool exhausted() const noexcept { return !value.has_value(); }
};

/*! \brief Exact NCTD by iterative deepening from the degree bound.

  For each order k the search gives every concept a teaching set of size
  exactly min(k, n): enlarging a consistent teaching set can only shrink the
  set of concepts it is consistent with, so it never introduces a clash.
  For the same reason only candidates whose consistent-concept sets are
  minimal under inclusion are kept. The most constrained concept is
  assigned next, candidates that clash with an earlier choice are skipped,
  and every concept hit by a choice must keep a usable candidate.

  Reaching k = TD ends the search, since minimum teaching sets never clash.
  `budget` bounds the number of search nodes over all k. Limited to classes
  of at most 64 concepts.
*/
nctd_result nctd_exact( const concept_class& cls, std::uint64_t budget );

/*! \brief Every bound the library computes for one class. */
struct bounds_report
{
  std::size_t vcdim = 0;
  std::size_t td = 0;
  std::size_t nctd_lower = 0;
  /*! \brief Order of the compression-built mapping; empty if compression stalled. */
  std::optional<std::size_t> nctd_upper;
  bool mapping_non_clashing = false;
  nctd_result nctd;
  fraction deg_avg;
};

bounds_report compute_bounds( const concept_class& cls, std::uint64_t budget );

} // namespace conceptlab
