#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "compression.hpp"
#include "core.hpp"
#include "teaching.hpp"

namespace conceptlab
{

enum class output_format
{
  text,
  csv,
  json
};

/*! \brief Parses the class text format.

  One concept per line as a 0/1 string, `#` comments, blank lines ignored,
  and an optional `instances: a b c` header before the first concept.
  Throws `parse_error` carrying the offending line number.
*/
concept_class parse_class( std::string_view text );

/*! \brief Inverse of `parse_class`; the header is emitted only for non-default names. */
std::string serialize_class( const concept_class& cls );

/*! \brief `{(x1,1),(x4,1)}`, entries ascending; `{}` when empty. */
std::string format_fragment( const fragment& f, const std::vector<std::string>& names );

fragment parse_fragment( std::string_view text, const std::vector<std::string>& names );

/*! \brief Label vector of `f` on its own subset, e.g. "0 1". */
std::string format_labels( std::uint32_t pattern, std::size_t d );

/*! \brief `{x1,x2}` */
std::string format_subset( std::span<const std::size_t> subset, const std::vector<std::string>& names );

/*! \brief Mapping file: one `C<k> <fragment>` line per concept, `#` comments. */
teacher_mapping parse_mapping( std::string_view text, const concept_class& cls );
std::string format_mapping( const teacher_mapping& mapping, const concept_class& cls );

/*! \brief Frequency table of one round.

  Text layout: label patterns as rows in ascending binary
  order, d-subsets as columns in lexicographic order. CSV emits one cell per
  line.
*/
std::string render_frequency_table( const round_record& record, const std::vector<std::string>& names,
                                    output_format style );

/*! \brief One row per concept in removal order: labels, round, assigned fragments. */
std::string render_assignments( const compression_trace& trace, output_format style );

/*! \brief Stall witness: round, pool and the table that has no frequency-1 cell. */
std::string render_stall( const stall& s, const concept_class& cls );

/*! \brief Per-round tables followed by the assignment table, as shown by `demo-c1`. */
std::string render_trace_figures( const compression_trace& trace );

} // namespace conceptlab
