// Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any fails.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "conceptlab/census.hpp"
#include "conceptlab/cli.hpp"
#include "conceptlab/golden.hpp"
#include "conceptlab/io.hpp"
#include "conceptlab/teaching.hpp"
#include "conceptlab/vc.hpp"
#include "oracles.hpp"

using namespace conceptlab;

namespace
{

struct verdict
{
  bool ok = true;
  std::string detail;

  void require( bool cond, const std::string& what )
  {
    if ( !cond )
    {
      ok = false;
      detail += ( detail.empty() ? "" : "; " ) + what;
    }
  }
};

struct captured
{
  int code;
  std::string out;
};

captured run_cli( std::vector<std::string> args )
{
  args.insert( args.begin(), "conceptlab" );
  std::vector<const char*> argv;
  for ( const auto& a : args )
  {
    argv.push_back( a.c_str() );
  }
  std::ostringstream out, err;
  const int code = cli_main( static_cast<int>( argv.size() ), argv.data(), out, err );
  return { code, out.str() };
}

/* Runs the installed tool as a separate process and returns its stdout. */
std::string run_process( const std::string& args )
{
  const std::string cmd = std::string( CONCEPTLAB_TOOL ) + " " + args + " 2>/dev/null";
  std::string out;
  if ( FILE* p = popen( cmd.c_str(), "r" ) )
  {
    char buf[4096];
    for ( std::size_t got; ( got = fread( buf, 1, sizeof buf, p ) ) > 0; )
    {
      out.append( buf, got );
    }
    pclose( p );
  }
  return out;
}

std::string slurp( const std::string& path )
{
  std::ifstream in( path );
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

census_result census( std::size_t n, std::vector<check_kind> checks, std::size_t sample = 0, std::uint64_t seed = 0,
                      std::uint64_t budget = 10'000'000 )
{
  census_config c;
  c.n = n;
  c.checks = std::move( checks );
  c.sample_count = sample;
  c.seed = seed;
  c.budget = budget;
  return run_census( c );
}

void require_clean( verdict& v, const census_result& r, std::uint64_t expected_classes, const std::string& label,
                    bool allow_undecided = false )
{
  v.require( r.classes_checked == expected_classes, label + ": " + std::to_string( r.classes_checked ) + " classes" );
  v.require( r.total_failures() == 0, label + ": " + std::to_string( r.total_failures() ) + " failures" );
  if ( allow_undecided )
  {
    std::cout << "  " << label << ": " << r.undecided.size() << " classes left undecided by the search budget\n";
  }
  else
  {
    v.require( r.undecided.empty(), label + ": " + std::to_string( r.undecided.size() ) + " undecided" );
  }
  for ( const auto& w : r.failures )
  {
    std::cout << "  witness " << to_string( w.check ) << ": " << w.evidence << "\n" << w.class_text;
  }
}

verdict figure_fidelity()
{
  verdict v;
  const auto r = run_cli( { "demo-c1" } );
  const auto fixture = slurp( CONCEPTLAB_FIXTURES "/c1_figures.txt" );
  v.require( r.code == exit_ok, "exit code " + std::to_string( r.code ) );
  v.require( r.out == fixture, "output differs from fixture file" );
  v.require( r.out == c1_figures_golden(), "output differs from embedded fixture" );

  // count table cells and assignment summary in the fixture itself
  std::size_t cells = 0, unassigned = 0;
  bool assigned21 = false;
  std::istringstream in( fixture );
  for ( std::string line; std::getline( in, line ); )
  {
    if ( line.size() > 3 && ( line[0] == '0' || line[0] == '1' ) && line[1] == ' ' )
    {
      std::istringstream row( line.substr( 3 ) );
      for ( int c; row >> c; )
      {
        ++cells;
      }
    }
    assigned21 |= line == "assigned 21 of 24 fragments";
    if ( line.rfind( "unassigned ", 0 ) == 0 )
    {
      for ( auto pos = line.find( '{' ); pos != std::string::npos; pos = line.find( '{', pos + 1 ) )
      {
        ++unassigned;
      }
    }
  }
  v.require( cells == 96, std::to_string( cells ) + " table cells" );
  v.require( assigned21, "assignment summary line missing" );
  v.require( unassigned == 3, std::to_string( unassigned ) + " unassigned fragments" );
  return v;
}

verdict c1_bounds_chain()
{
  verdict v;
  const auto c1 = parse_class( slurp( CONCEPTLAB_FIXTURES "/c1.txt" ) );
  const auto rows = oracle::rows_of( c1 );
  const auto b = compute_bounds( c1, 10'000'000 );
  v.require( b.vcdim == 2 && oracle::vcdim( rows ) == 2, "vcdim" );
  v.require( b.deg_avg == fraction{ 12, 5 }, "deg_avg " + std::to_string( b.deg_avg.num ) + "/" +
                                                  std::to_string( b.deg_avg.den ) );
  const auto deg = oracle::degrees( rows );
  std::size_t deg_sum = 0;
  for ( auto d : deg )
  {
    deg_sum += d;
  }
  v.require( deg_sum * 5 == 12 * rows.size(), "oracle degree sum" );
  v.require( b.nctd_lower == 2, "degree lower bound" );
  v.require( b.nctd_upper == 2, "compression mapping order" );
  v.require( b.nctd.value == 2, "nctd_exact" );
  v.require( oracle::nctd( rows ) == 2, "brute-force nctd" );

  auto trace = run_ordered_compression( c1 );
  const auto* t = std::get_if<compression_trace>( &trace );
  v.require( t != nullptr, "compression stalled" );
  if ( t )
  {
    const auto mapping = build_teacher_mapping( *t );
    std::size_t pairs = 0, clean = 0;
    for ( std::size_t i = 0; i < rows.size(); ++i )
    {
      for ( std::size_t j = i + 1; j < rows.size(); ++j )
      {
        ++pairs;
        const bool j_fits_i = consistent( c1[j], mapping.sets[i] );
        const bool i_fits_j = consistent( c1[i], mapping.sets[j] );
        clean += !( j_fits_i && i_fits_j );
      }
    }
    v.require( pairs == 45 && clean == 45, std::to_string( clean ) + " of " + std::to_string( pairs ) + " pairs" );
    v.require( is_non_clashing( c1, mapping ), "is_non_clashing" );
  }
  return v;
}

verdict lemma1_census()
{
  verdict v;
  require_clean( v, census( 3, { check_kind::lemma1 } ), 255, "n=3" );
  require_clean( v, census( 4, { check_kind::lemma1 } ), 65535, "n=4" );
  // independent restatement at n = 3 through the power-set oracle
  for ( std::uint64_t mask = 1; mask < 256; ++mask )
  {
    const auto rows = oracle::rows_of( class_from_mask( 3, mask ) );
    v.require( rows.size() <= oracle::sauer_sum( rows, oracle::vcdim( rows ) ),
               "oracle bound fails for mask " + std::to_string( mask ) );
  }
  return v;
}

verdict no_stall_census()
{
  verdict v;
  for ( std::size_t n = 1; n <= 4; ++n )
  {
    const std::uint64_t classes = ( std::uint64_t{ 1 } << ( std::size_t{ 1 } << n ) ) - 1;
    require_clean( v, census( n, { check_kind::no_stall } ), classes, "n=" + std::to_string( n ) );
  }
  return v;
}

verdict non_clash_census()
{
  verdict v;
  for ( std::size_t n = 1; n <= 4; ++n )
  {
    const std::uint64_t classes = ( std::uint64_t{ 1 } << ( std::size_t{ 1 } << n ) ) - 1;
    require_clean( v, census( n, { check_kind::non_clash } ), classes, "n=" + std::to_string( n ) );
  }
  require_clean( v, census( 3, { check_kind::nctd_le_vcdim } ), 255, "nctd n=3" );
  require_clean( v, census( 4, { check_kind::nctd_le_vcdim }, 1000, 2024 ), 1000, "nctd n=4 sample" );
  return v;
}

verdict oracle_consistency()
{
  verdict v;
  // library stream: the check asserts lower <= nctd <= min(vcdim, td) wherever the search finishes
  require_clean( v, census( 4, { check_kind::nctd_le_vcdim } ), 65535, "n=4", true );
  require_clean( v, census( 5, { check_kind::nctd_le_vcdim }, 500, 77 ), 500, "n=5 sample", true );
  require_clean( v, census( 6, { check_kind::nctd_le_vcdim }, 200, 78, 1'000'000 ), 200, "n=6 sample", true );

  // oracle stream: every quantity recomputed by brute force at n = 3
  std::size_t checked = 0;
  for ( std::uint64_t mask = 1; mask < 256; ++mask )
  {
    const auto cls = class_from_mask( 3, mask );
    const auto rows = oracle::rows_of( cls );
    const auto deg = oracle::degrees( rows );
    std::size_t sum = 0;
    for ( auto d : deg )
    {
      sum += d;
    }
    const std::size_t lower = ( sum + 2 * rows.size() - 1 ) / ( 2 * rows.size() );
    const auto nctd = oracle::nctd( rows );
    const auto bound = std::min( oracle::vcdim( rows ), oracle::teaching_dimension( rows ) );
    v.require( lower <= nctd && nctd <= bound, "oracle chain fails for mask " + std::to_string( mask ) );
    const auto exact = nctd_exact( cls, 10'000'000 );
    v.require( exact.value == nctd, "nctd_exact disagrees with oracle for mask " + std::to_string( mask ) );
    v.require( degree_lower_bound( cls ) == lower, "degree bound disagrees for mask " + std::to_string( mask ) );
    ++checked;
  }
  v.require( checked == 255, "oracle stream size" );
  return v;
}

verdict determinism()
{
  verdict v;
  const std::string c1 = CONCEPTLAB_FIXTURES "/c1.txt";
  const std::vector<std::vector<std::string>> commands{
      { "demo-c1" },
      { "vcdim", c1, "--format", "json" },
      { "compress", c1, "--tables", "--format", "json" },
      { "compress", c1, "--format", "csv" },
      { "teach", c1 },
      { "td", c1 },
      { "nctd", c1 },
      { "bounds", c1 },
      { "bounds", c1, "--format", "json" },
      { "census", "--n", "3", "--format", "json" },
      { "census", "--n", "3", "--dedup" },
      { "census", "--n", "3", "--checks", "nctd_le_vcdim", "--budget", "3" },
  };
  for ( const auto& cmd : commands )
  {
    const auto a = run_cli( cmd ), b = run_cli( cmd );
    v.require( a.code == b.code && a.out == b.out, "differs: " + cmd.front() + " " + cmd.back() );
  }

  // parallel aggregation against a single worker
  const std::vector<std::string> threads{ "1", "3", "7" };
  std::string exhaustive, sampled;
  for ( const auto& t : threads )
  {
    const auto e = run_cli( { "census", "--n", "4", "--checks", "lemma1,nctd_le_vcdim", "--threads", t } ).out;
    const auto s = run_cli( { "census", "--n", "5", "--sample", "400", "--seed", "5", "--threads", t } ).out;
    if ( exhaustive.empty() )
    {
      exhaustive = e;
      sampled = s;
    }
    v.require( e == exhaustive, "exhaustive census differs at " + t + " threads" );
    v.require( s == sampled, "sampled census differs at " + t + " threads" );
  }

  // separate processes
  for ( const auto* args : { "demo-c1", "bounds " CONCEPTLAB_FIXTURES "/c1.txt --format json",
                             "census --n 4 --sample 500 --seed 11 --threads 3" } )
  {
    const auto a = run_process( args ), b = run_process( args );
    v.require( !a.empty() && a == b, std::string( "process runs differ: " ) + args );
  }
  v.require( run_process( "demo-c1" ) == run_cli( { "demo-c1" } ).out, "process and in-process output differ" );
  return v;
}

} // namespace

int main()
{
  struct criterion
  {
    int id;
    const char* name;
    double limit_seconds;
    std::function<verdict()> run;
  };
  const std::vector<criterion> criteria{
      { 1, "figure fidelity", 1.0, figure_fidelity },
      { 2, "running example bounds chain", 5.0, c1_bounds_chain },
      { 3, "sauer bound census", 60.0, lemma1_census },
      { 4, "compression without stall census", 600.0, no_stall_census },
      { 5, "non-clashing mapping census", 600.0, non_clash_census },
      { 6, "oracle consistency", 600.0, oracle_consistency },
      { 7, "determinism", 600.0, determinism },
  };

  int failed = 0;
  for ( const auto& c : criteria )
  {
    const auto start = std::chrono::steady_clock::now();
    auto v = c.run();
    const double secs = std::chrono::duration<double>( std::chrono::steady_clock::now() - start ).count();
    v.require( secs < c.limit_seconds, "over time limit" );
    char timing[32];
    std::snprintf( timing, sizeof timing, "%.2f s", secs );
    std::cout << "criterion " << c.id << ": " << ( v.ok ? "PASS" : "FAIL" ) << "  " << c.name << " (" << timing
              << ")";
    if ( !v.ok )
    {
      std::cout << "  " << v.detail;
      ++failed;
    }
    std::cout << "\n";
  }
  return failed == 0 ? 0 : 1;
}
