#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "census.hpp"
#include "compression.hpp"
#include "teaching.hpp"
#include "vc.hpp"

namespace conceptlab
{

using json = nlohmann::ordered_json;

/*! \brief "12/5" */
std::string to_string( const fraction& f );
fraction parse_fraction( const std::string& text );

/*! \brief Shortest decimal that round-trips, e.g. "2.4". */
std::string format_decimal( double value );

json class_json( const concept_class& cls );
json vc_json( const vc_report& report, const concept_class& cls );
json table_json( const frequency_table& table, const std::vector<std::string>& names );
json trace_json( const compression_trace& trace, bool include_tables );
json mapping_json( const teacher_mapping& mapping, const concept_class& cls );

json bounds_json( const bounds_report& report );
bounds_report bounds_from_json( const json& j );

/*! wall time is deliberately left out so that reports are reproducible */
json census_json( const census_result& result );
census_result census_from_json( const json& j );

} // namespace conceptlab
