#include "conceptlab/cli.hpp"

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "conceptlab/census.hpp"
#include "conceptlab/compression.hpp"
#include "conceptlab/golden.hpp"
#include "conceptlab/io.hpp"
#include "conceptlab/report.hpp"
#include "conceptlab/teaching.hpp"
#include "conceptlab/vc.hpp"

namespace conceptlab
{

namespace
{

std::string read_file( const std::string& path )
{
  std::ifstream in( path, std::ios::binary );
  if ( !in )
  {
    throw error( "cannot open '" + path + "'" );
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

concept_class load_class( const std::string& path )
{
  try
  {
    return parse_class( read_file( path ) );
  }
  catch ( const parse_error& e )
  {
    throw parse_error( path + ": " + e.what() );
  }
}

const std::map<std::string, output_format> format_names{
    { "text", output_format::text }, { "csv", output_format::csv }, { "json", output_format::json } };

void print_json( std::ostream& out, const json& j )
{
  out << j.dump( 2 ) << "\n";
}

int cmd_vcdim( const concept_class& cls, output_format fmt, std::ostream& out )
{
  const auto vc = vc_dimension( cls );
  switch ( fmt )
  {
  case output_format::json:
    print_json( out, { { "class", class_json( cls ) }, { "vc", vc_json( vc, cls ) } } );
    break;
  case output_format::csv:
  {
    std::string witness;
    for ( auto i : vc.witness )
    {
      witness += ( witness.empty() ? "" : " " ) + cls.instance_names()[i];
    }
    out << "vcdim,witness\n" << vc.dimension << "," << witness << "\n";
    break;
  }
  case output_format::text:
    out << "vcdim " << vc.dimension << "\nwitness " << format_subset( vc.witness, cls.instance_names() ) << "\n";
    break;
  }
  return exit_ok;
}

int report_stall( const stall& s, const concept_class& cls, output_format fmt, std::ostream& out )
{
  if ( fmt == output_format::json )
  {
    json pool = json::array();
    for ( auto i : s.pool )
    {
      pool.push_back( concept_name( i ) );
    }
    print_json( out, { { "stall", { { "round", s.round_index },
                                     { "pool", pool },
                                     { "table", table_json( s.table, cls.instance_names() ) } } } } );
  }
  else
  {
    out << render_stall( s, cls );
  }
  return exit_check_failed;
}

int cmd_compress( const concept_class& cls, bool tables, output_format fmt, std::ostream& out )
{
  auto outcome = run_ordered_compression( cls );
  if ( const auto* s = std::get_if<stall>( &outcome ) )
  {
    return report_stall( *s, cls, fmt, out );
  }
  const auto& trace = std::get<compression_trace>( outcome );
  if ( fmt == output_format::json )
  {
    print_json( out, trace_json( trace, tables ) );
    return exit_ok;
  }
  if ( tables )
  {
    for ( const auto& r : trace.rounds )
    {
      out << render_frequency_table( r, cls.instance_names(), fmt );
      if ( fmt == output_format::text )
      {
        out << "\n";
      }
    }
  }
  out << render_assignments( trace, fmt );
  return exit_ok;
}

int cmd_teach( const concept_class& cls, output_format fmt, std::ostream& out )
{
  auto outcome = run_ordered_compression( cls );
  if ( const auto* s = std::get_if<stall>( &outcome ) )
  {
    return report_stall( *s, cls, fmt, out );
  }
  const auto mapping = build_teacher_mapping( std::get<compression_trace>( outcome ) );
  switch ( fmt )
  {
  case output_format::json:
    print_json( out, mapping_json( mapping, cls ) );
    break;
  case output_format::csv:
    out << "concept,teaching_set\n";
    for ( std::size_t i = 0; i < mapping.sets.size(); ++i )
    {
      out << concept_name( i ) << ",\"" << format_fragment( mapping.sets[i], cls.instance_names() ) << "\"\n";
    }
    break;
  case output_format::text:
    out << "# order " << mapping.order() << "\n" << format_mapping( mapping, cls );
    break;
  }
  return exit_ok;
}

int cmd_check_nonclash( const concept_class& cls, const std::string& mapping_path, output_format fmt,
                        std::ostream& out )
{
  const auto mapping = parse_mapping( read_file( mapping_path ), cls );
  const auto clash = find_clash( cls, mapping );
  const auto pairs = binomial( cls.size(), 2 );
  const auto& names = cls.instance_names();
  switch ( fmt )
  {
  case output_format::json:
  {
    json j = { { "non_clashing", !clash.has_value() }, { "pairs", pairs }, { "order", mapping.order() } };
    j["clash"] = clash ? json{ concept_name( clash->first ), concept_name( clash->second ) } : json( nullptr );
    print_json( out, j );
    break;
  }
  case output_format::csv:
    out << "non_clashing,pairs,first,second\n"
        << ( clash ? "false" : "true" ) << "," << pairs << ","
        << ( clash ? concept_name( clash->first ) + "," + concept_name( clash->second ) : "," ) << "\n";
    break;
  case output_format::text:
    if ( clash )
    {
      const auto i = clash->first, j = clash->second;
      out << "clash between " << concept_name( i ) << " and " << concept_name( j ) << "\n"
          << "T(" << concept_name( i ) << ") = " << format_fragment( mapping.sets[i], names )
          << " is consistent with " << concept_name( j ) << "\n"
          << "T(" << concept_name( j ) << ") = " << format_fragment( mapping.sets[j], names )
          << " is consistent with " << concept_name( i ) << "\n";
    }
    else
    {
      out << "non-clashing: " << pairs << " pairs checked, order " << mapping.order() << "\n";
    }
    break;
  }
  return clash ? exit_check_failed : exit_ok;
}

int cmd_td( const concept_class& cls, output_format fmt, std::ostream& out )
{
  std::vector<fragment> sets;
  std::size_t td = 0;
  for ( std::size_t i = 0; i < cls.size(); ++i )
  {
    sets.push_back( min_teaching_set( cls, i ) );
    td = std::max( td, sets.back().size() );
  }
  const auto& names = cls.instance_names();
  switch ( fmt )
  {
  case output_format::json:
  {
    json per = json::object();
    for ( std::size_t i = 0; i < sets.size(); ++i )
    {
      per[concept_name( i )] = format_fragment( sets[i], names );
    }
    print_json( out, { { "td", td }, { "min_teaching_sets", per } } );
    break;
  }
  case output_format::csv:
    out << "concept,size,teaching_set\n";
    for ( std::size_t i = 0; i < sets.size(); ++i )
    {
      out << concept_name( i ) << "," << sets[i].size() << ",\"" << format_fragment( sets[i], names ) << "\"\n";
    }
    break;
  case output_format::text:
    out << "td " << td << "\n";
    for ( std::size_t i = 0; i < sets.size(); ++i )
    {
      out << concept_name( i ) << " " << format_fragment( sets[i], names ) << "\n";
    }
    break;
  }
  return exit_ok;
}

int cmd_nctd( const concept_class& cls, std::uint64_t budget, output_format fmt, std::ostream& out )
{
  const auto r = nctd_exact( cls, budget );
  switch ( fmt )
  {
  case output_format::json:
  {
    json j = { { "nctd", r.value ? json( *r.value ) : json( nullptr ) },
               { "bracket", { r.lower, r.upper } },
               { "nodes", r.nodes },
               { "budget_exhausted", r.exhausted() } };
    print_json( out, j );
    break;
  }
  case output_format::csv:
    out << "nctd,lower,upper,nodes,budget_exhausted\n"
        << ( r.value ? std::to_string( *r.value ) : "" ) << "," << r.lower << "," << r.upper << "," << r.nodes << ","
        << ( r.exhausted() ? "true" : "false" ) << "\n";
    break;
  case output_format::text:
    if ( r.value )
    {
      out << "nctd " << *r.value << "\nnodes " << r.nodes << "\n";
    }
    else
    {
      out << "budget exhausted after " << r.nodes << " nodes: nctd in [" << r.lower << ", " << r.upper << "]\n";
    }
    break;
  }
  return r.exhausted() ? exit_budget : exit_ok;
}

int cmd_bounds( const concept_class& cls, std::uint64_t budget, output_format fmt, std::ostream& out )
{
  const auto b = compute_bounds( cls, budget );
  switch ( fmt )
  {
  case output_format::json:
    print_json( out, bounds_json( b ) );
    break;
  case output_format::csv:
    out << "vcdim,td,deg_avg,nctd_lower,nctd_upper,nctd_exact,mapping_non_clashing\n"
        << b.vcdim << "," << b.td << "," << to_string( b.deg_avg ) << "," << b.nctd_lower << ","
        << ( b.nctd_upper ? std::to_string( *b.nctd_upper ) : "" ) << ","
        << ( b.nctd.value ? std::to_string( *b.nctd.value ) : "" ) << ","
        << ( b.mapping_non_clashing ? "true" : "false" ) << "\n";
    break;
  case output_format::text:
    out << "vcdim " << b.vcdim << "\n"
        << "td " << b.td << "\n"
        << "deg_avg " << to_string( b.deg_avg ) << " (" << format_decimal( b.deg_avg.to_double() ) << ")\n"
        << "nctd_lower " << b.nctd_lower << "\n"
        << "nctd_upper " << ( b.nctd_upper ? std::to_string( *b.nctd_upper ) : "none (compression stalled)" ) << "\n";
    if ( b.nctd.value )
    {
      out << "nctd_exact " << *b.nctd.value << "\n";
    }
    else
    {
      out << "nctd_exact unknown, budget exhausted in [" << b.nctd.lower << ", " << b.nctd.upper << "]\n";
    }
    out << "mapping " << ( b.mapping_non_clashing ? "non-clashing" : "CLASHES" ) << "\n";
    break;
  }
  if ( !b.nctd_upper || !b.mapping_non_clashing )
  {
    return exit_check_failed;
  }
  return b.nctd.exhausted() ? exit_budget : exit_ok;
}

void print_witnesses( const std::vector<failure_witness>& list, const char* label, std::ostream& out )
{
  for ( const auto& w : list )
  {
    out << label << " " << to_string( w.check ) << ": " << w.evidence << "\n";
    std::istringstream lines( w.class_text );
    for ( std::string line; std::getline( lines, line ); )
    {
      out << "  " << line << "\n";
    }
  }
}

int cmd_census( const census_config& config, bool timing, output_format fmt, std::ostream& out, std::ostream& err )
{
  const auto result = run_census( config );
  std::uint64_t inconclusive = 0;
  for ( const auto& [check, tally] : result.tallies )
  {
    inconclusive += tally.inconclusive;
  }
  switch ( fmt )
  {
  case output_format::json:
    print_json( out, census_json( result ) );
    break;
  case output_format::csv:
    out << "check,passed,failed,inconclusive\n";
    for ( const auto& [check, tally] : result.tallies )
    {
      out << to_string( check ) << "," << tally.passed << "," << tally.failed << "," << tally.inconclusive << "\n";
    }
    break;
  case output_format::text:
    out << result.classes_checked << " classes, " << result.total_failures() << " failures\n";
    for ( const auto& [check, tally] : result.tallies )
    {
      out << to_string( check ) << ": " << tally.passed << " passed, " << tally.failed << " failed, "
          << tally.inconclusive << " inconclusive\n";
    }
    for ( const auto& [key, count] : result.histogram )
    {
      out << "vcdim " << key.first << " nctd " << key.second << ": " << count << " classes\n";
    }
    print_witnesses( result.failures, "FAIL", out );
    print_witnesses( result.undecided, "UNDECIDED", out );
    break;
  }
  if ( timing )
  {
    err << "wall time " << format_decimal( result.wall_seconds ) << " s\n";
  }
  if ( result.total_failures() > 0 )
  {
    return exit_check_failed;
  }
  return inconclusive > 0 ? exit_budget : exit_ok;
}

int cmd_demo_c1( output_format fmt, std::ostream& out, std::ostream& err )
{
  const auto cls = builtin_c1();
  auto outcome = run_ordered_compression( cls );
  if ( const auto* s = std::get_if<stall>( &outcome ) )
  {
    return report_stall( *s, cls, fmt, out );
  }
  const auto& trace = std::get<compression_trace>( outcome );
  const auto rendered = render_trace_figures( trace );
  const auto golden = c1_figures_golden();
  const bool matches = rendered == golden;

  switch ( fmt )
  {
  case output_format::json:
  {
    auto j = trace_json( trace, true );
    j["matches_golden"] = matches;
    print_json( out, j );
    break;
  }
  case output_format::csv:
    for ( const auto& r : trace.rounds )
    {
      out << render_frequency_table( r, cls.instance_names(), output_format::csv );
    }
    out << render_assignments( trace, output_format::csv );
    break;
  case output_format::text:
    out << rendered;
    break;
  }

  if ( !matches )
  {
    std::istringstream a( rendered ), b{ std::string( golden ) };
    std::string la, lb;
    for ( std::size_t ln = 1;; ++ln )
    {
      const bool ga = static_cast<bool>( std::getline( a, la ) );
      const bool gb = static_cast<bool>( std::getline( b, lb ) );
      if ( !ga && !gb )
      {
        break;
      }
      if ( !ga || !gb || la != lb )
      {
        err << "golden mismatch at line " << ln << "\n  expected: " << ( gb ? lb : "<eof>" )
            << "\n  actual:   " << ( ga ? la : "<eof>" ) << "\n";
        break;
      }
    }
    return exit_check_failed;
  }
  return exit_ok;
}

} // namespace

int cli_main( int argc, const char* const* argv, std::ostream& out, std::ostream& err )
{
  CLI::App app{ "Analyze finite concept classes: VC dimension, ordered compression, no-clash teaching." };
  app.require_subcommand( 1 );

  std::string format_name = "text";
  auto add_format = [&]( CLI::App* sub ) {
    sub->add_option( "--format", format_name, "Output format" )
        ->check( CLI::IsMember( { "text", "csv", "json" } ) );
  };

  std::string file, mapping_file;
  bool tables = false;
  std::uint64_t budget = 10'000'000;

  auto* vcdim = app.add_subcommand( "vcdim", "VC dimension and a shattered witness" );
  vcdim->add_option( "FILE", file, "Class file" )->required();
  add_format( vcdim );

  auto* compress = app.add_subcommand( "compress", "Run the ordered compression and list assigned fragments" );
  compress->add_option( "FILE", file, "Class file" )->required();
  compress->add_flag( "--tables", tables, "Also print the frequency table of every round" );
  add_format( compress );

  auto* teach = app.add_subcommand( "teach", "Teacher mapping built from the compression" );
  teach->add_option( "FILE", file, "Class file" )->required();
  add_format( teach );

  auto* check = app.add_subcommand( "check-nonclash", "Verify that a teacher mapping is non-clashing" );
  check->add_option( "FILE", file, "Class file" )->required();
  check->add_option( "MAPPING", mapping_file, "Mapping file with one 'C<k> <fragment>' line per concept" )->required();
  add_format( check );

  auto* td = app.add_subcommand( "td", "Teaching dimension and minimum teaching sets" );
  td->add_option( "FILE", file, "Class file" )->required();
  add_format( td );

  auto* nctd = app.add_subcommand( "nctd", "Exact no-clash teaching dimension by search" );
  nctd->add_option( "FILE", file, "Class file" )->required();
  nctd->add_option( "--budget", budget, "Search node limit" )->check( CLI::PositiveNumber );
  add_format( nctd );

  auto* bounds = app.add_subcommand( "bounds", "All bounds: vcdim, td, degree bound, mapping order, exact NCTD" );
  bounds->add_option( "FILE", file, "Class file" )->required();
  bounds->add_option( "--budget", budget, "Search node limit for the exact NCTD" )->check( CLI::PositiveNumber );
  add_format( bounds );

  census_config config;
  std::vector<std::string> check_names;
  bool timing = false;
  auto* census = app.add_subcommand( "census", "Check the bounds over every (or randomly sampled) class" );
  census->add_option( "--n", config.n, "Domain size" )->required()->check( CLI::Range( 1, 20 ) );
  census->add_flag( "--dedup", config.dedup, "One class per instance-permutation/label-flip orbit" );
  census->add_option( "--checks", check_names, "Comma-separated subset of lemma1,no_stall,non_clash,nctd_le_vcdim" )
      ->delimiter( ',' );
  census->add_option( "--sample", config.sample_count, "Number of random classes instead of exhaustive enumeration" );
  census->add_option( "--seed", config.seed, "Seed for --sample" );
  census->add_option( "--min-size", config.min_size, "Smallest class size" );
  census->add_option( "--max-size", config.max_size, "Largest class size (0 = no limit)" );
  census->add_option( "--budget", config.budget, "Search node limit per class for the exact NCTD" )
      ->check( CLI::PositiveNumber );
  census->add_option( "--threads", config.threads, "Worker threads (0 = all cores)" );
  census->add_flag( "--stop-on-failure", config.stop_on_failure, "Stop at the first failing class" );
  census->add_flag( "--timing", timing, "Print wall time to stderr" );
  add_format( census );

  auto* demo = app.add_subcommand( "demo-c1", "Run the ten-concept example and compare with the embedded reference tables" );
  add_format( demo );

  try
  {
    app.parse( argc, argv );
  }
  catch ( const CLI::ParseError& e )
  {
    const auto code = app.exit( e, out, err );
    return code == 0 ? exit_ok : exit_usage;
  }

  const auto fmt = format_names.at( format_name );
  try
  {
    if ( vcdim->parsed() )
    {
      return cmd_vcdim( load_class( file ), fmt, out );
    }
    if ( compress->parsed() )
    {
      return cmd_compress( load_class( file ), tables, fmt, out );
    }
    if ( teach->parsed() )
    {
      return cmd_teach( load_class( file ), fmt, out );
    }
    if ( check->parsed() )
    {
      return cmd_check_nonclash( load_class( file ), mapping_file, fmt, out );
    }
    if ( td->parsed() )
    {
      return cmd_td( load_class( file ), fmt, out );
    }
    if ( nctd->parsed() )
    {
      return cmd_nctd( load_class( file ), budget, fmt, out );
    }
    if ( bounds->parsed() )
    {
      return cmd_bounds( load_class( file ), budget, fmt, out );
    }
    if ( census->parsed() )
    {
      if ( !check_names.empty() )
      {
        config.checks.clear();
        for ( const auto& name : check_names )
        {
          const auto kind = parse_check_kind( name );
          if ( !kind )
          {
            err << "unknown check '" << name << "'\n";
            return exit_usage;
          }
          config.checks.push_back( *kind );
        }
      }
      return cmd_census( config, timing, fmt, out, err );
    }
    if ( demo->parsed() )
    {
      return cmd_demo_c1( fmt, out, err );
    }
  }
  catch ( const error& e )
  {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  }
  return exit_usage;
}

} // namespace conceptlab
