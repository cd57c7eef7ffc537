#include "conceptlab/report.hpp"

#include <charconv>

#include "conceptlab/io.hpp"

namespace conceptlab
{

std::string to_string( const fraction& f )
{
  return std::to_string( f.num ) + "/" + std::to_string( f.den );
}

fraction parse_fraction( const std::string& text )
{
  const auto slash = text.find( '/' );
  if ( slash == std::string::npos )
  {
    throw parse_error( "fraction needs the form a/b" );
  }
  return fraction::reduced( std::stoull( text.substr( 0, slash ) ), std::stoull( text.substr( slash + 1 ) ) );
}

std::string format_decimal( double value )
{
  char buf[64];
  const auto [end, ec] = std::to_chars( buf, buf + sizeof buf, value );
  return std::string( buf, end );
}

json class_json( const concept_class& cls )
{
  json concepts = json::array();
  for ( std::size_t i = 0; i < cls.size(); ++i )
  {
    concepts.push_back( cls.row( i ) );
  }
  return { { "n", cls.num_instances() }, { "m", cls.size() }, { "instances", cls.instance_names() },
           { "concepts", concepts } };
}

json vc_json( const vc_report& report, const concept_class& cls )
{
  json witness = json::array();
  for ( auto i : report.witness )
  {
    witness.push_back( cls.instance_names().at( i ) );
  }
  return { { "vcdim", report.dimension }, { "witness", witness } };
}

json table_json( const frequency_table& table, const std::vector<std::string>& names )
{
  json cells = json::array();
  for ( std::size_t s = 0; s < table.subsets.size(); ++s )
  {
    json subset = json::array();
    for ( auto i : table.subsets[s] )
    {
      subset.push_back( names.at( i ) );
    }
    for ( std::uint32_t p = 0; p < table.patterns_per_subset(); ++p )
    {
      std::vector<int> labels;
      for ( std::size_t k = 0; k < table.d; ++k )
      {
        labels.push_back( static_cast<int>( ( p >> ( table.d - 1 - k ) ) & 1u ) );
      }
      cells.push_back( { { "subset", subset }, { "pattern", labels }, { "count", table.count( s, p ) } } );
    }
  }
  return { { "round", table.round_index }, { "d", table.d }, { "pool_size", table.pool_size }, { "cells", cells } };
}

json trace_json( const compression_trace& trace, bool include_tables )
{
  const auto& names = trace.cls.instance_names();
  json rounds = json::array();
  for ( const auto& r : trace.rounds )
  {
    json pool_before = json::array(), pool_after = json::array(), assignments = json::array();
    for ( auto i : r.pool_before )
    {
      pool_before.push_back( concept_name( i ) );
    }
    for ( auto i : r.pool_after )
    {
      pool_after.push_back( concept_name( i ) );
    }
    for ( const auto& a : r.assignments )
    {
      assignments.push_back(
          { { "fragment", format_fragment( a.frag, names ) }, { "concept", concept_name( a.concept_index ) } } );
    }
    json round = { { "round", r.round_index }, { "pool_before", pool_before } };
    if ( include_tables )
    {
      round["table"] = table_json( r.table, names );
    }
    round["assignments"] = assignments;
    round["pool_after"] = pool_after;
    rounds.push_back( round );
  }
  json concepts = json::array();
  for ( std::size_t i = 0; i < trace.cls.size(); ++i )
  {
    json fragments = json::array();
    for ( const auto& f : trace.fragments_of( i ) )
    {
      fragments.push_back( format_fragment( f, names ) );
    }
    concepts.push_back( { { "concept", concept_name( i ) },
                          { "labels", trace.cls.row( i ) },
                          { "round", trace.round_of( i ) },
                          { "fragments", fragments } } );
  }
  json unassigned = json::array();
  for ( const auto& f : trace.unassigned_fragments() )
  {
    unassigned.push_back( format_fragment( f, names ) );
  }
  return { { "d", trace.d }, { "rounds", rounds }, { "assignments", concepts }, { "unassigned", unassigned } };
}

json mapping_json( const teacher_mapping& mapping, const concept_class& cls )
{
  json sets = json::object();
  for ( std::size_t i = 0; i < mapping.sets.size(); ++i )
  {
    sets[concept_name( i )] = format_fragment( mapping.sets[i], cls.instance_names() );
  }
  return { { "order", mapping.order() }, { "teaching_sets", sets } };
}

json bounds_json( const bounds_report& r )
{
  json j = { { "vcdim", r.vcdim }, { "td", r.td }, { "nctd_lower", r.nctd_lower } };
  j["nctd_upper"] = r.nctd_upper ? json( *r.nctd_upper ) : json( nullptr );
  j["mapping_non_clashing"] = r.mapping_non_clashing;
  j["nctd_exact"] = r.nctd.value ? json( *r.nctd.value ) : json( nullptr );
  j["nctd_bracket"] = { r.nctd.lower, r.nctd.upper };
  j["nctd_nodes"] = r.nctd.nodes;
  j["deg_avg"] = { { "fraction", to_string( r.deg_avg ) }, { "decimal", r.deg_avg.to_double() } };
  return j;
}

bounds_report bounds_from_json( const json& j )
{
  bounds_report r;
  r.vcdim = j.at( "vcdim" ).get<std::size_t>();
  r.td = j.at( "td" ).get<std::size_t>();
  r.nctd_lower = j.at( "nctd_lower" ).get<std::size_t>();
  if ( !j.at( "nctd_upper" ).is_null() )
  {
    r.nctd_upper = j.at( "nctd_upper" ).get<std::size_t>();
  }
  r.mapping_non_clashing = j.at( "mapping_non_clashing" ).get<bool>();
  if ( !j.at( "nctd_exact" ).is_null() )
  {
    r.nctd.value = j.at( "nctd_exact" ).get<std::size_t>();
  }
  r.nctd.lower = j.at( "nctd_bracket" ).at( 0 ).get<std::size_t>();
  r.nctd.upper = j.at( "nctd_bracket" ).at( 1 ).get<std::size_t>();
  r.nctd.nodes = j.at( "nctd_nodes" ).get<std::uint64_t>();
  r.deg_avg = parse_fraction( j.at( "deg_avg" ).at( "fraction" ).get<std::string>() );
  return r;
}

namespace
{

json witness_json( const failure_witness& w )
{
  return { { "check", std::string( to_string( w.check ) ) },
           { "status", std::string( to_string( w.status ) ) },
           { "evidence", w.evidence },
           { "budget", w.budget },
           { "class", w.class_text } };
}

failure_witness witness_from_json( const json& j )
{
  failure_witness w;
  const auto check = parse_check_kind( j.at( "check" ).get<std::string>() );
  if ( !check )
  {
    throw parse_error( "unknown check name in report" );
  }
  w.check = *check;
  const auto status = j.at( "status" ).get<std::string>();
  w.status = status == "fail" ? check_status::fail
             : status == "inconclusive" ? check_status::inconclusive
                                        : check_status::pass;
  w.evidence = j.at( "evidence" ).get<std::string>();
  w.budget = j.at( "budget" ).get<std::uint64_t>();
  w.class_text = j.at( "class" ).get<std::string>();
  return w;
}

} // namespace

json census_json( const census_result& result )
{
  json checks = json::object();
  for ( const auto& [check, tally] : result.tallies )
  {
    checks[std::string( to_string( check ) )] = {
        { "passed", tally.passed }, { "failed", tally.failed }, { "inconclusive", tally.inconclusive } };
  }
  json failures = json::array(), undecided = json::array(), histogram = json::array();
  for ( const auto& w : result.failures )
  {
    failures.push_back( witness_json( w ) );
  }
  for ( const auto& w : result.undecided )
  {
    undecided.push_back( witness_json( w ) );
  }
  for ( const auto& [key, count] : result.histogram )
  {
    histogram.push_back( { { "vcdim", key.first }, { "nctd", key.second }, { "classes", count } } );
  }
  return { { "n", result.n },
           { "classes_checked", result.classes_checked },
           { "total_failures", result.total_failures() },
           { "checks", checks },
           { "failures", failures },
           { "undecided", undecided },
           { "histogram", histogram } };
}

census_result census_from_json( const json& j )
{
  census_result r;
  r.n = j.at( "n" ).get<std::size_t>();
  r.classes_checked = j.at( "classes_checked" ).get<std::uint64_t>();
  for ( const auto& [name, t] : j.at( "checks" ).items() )
  {
    const auto check = parse_check_kind( name );
    if ( !check )
    {
      throw parse_error( "unknown check name in report" );
    }
    r.tallies[*check] = { t.at( "passed" ).get<std::uint64_t>(), t.at( "failed" ).get<std::uint64_t>(),
                          t.at( "inconclusive" ).get<std::uint64_t>() };
  }
  for ( const auto& w : j.at( "failures" ) )
  {
    r.failures.push_back( witness_from_json( w ) );
  }
  for ( const auto& w : j.at( "undecided" ) )
  {
    r.undecided.push_back( witness_from_json( w ) );
  }
  for ( const auto& h : j.at( "histogram" ) )
  {
    r.histogram[{ h.at( "vcdim" ).get<std::size_t>(), h.at( "nctd" ).get<std::size_t>() }] =
        h.at( "classes" ).get<std::uint64_t>();
  }
  return r;
}

} // namespace conceptlab
