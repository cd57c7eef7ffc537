#include "conceptlab/io.hpp"

#include <algorithm>
#include <iomanip>
#include <map>
#include <sstream>

#include "conceptlab/report.hpp"

namespace conceptlab
{

namespace
{

std::string_view trim( std::string_view s )
{
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of( ws );
  if ( b == std::string_view::npos )
  {
    return {};
  }
  return s.substr( b, s.find_last_not_of( ws ) - b + 1 );
}

std::vector<std::string_view> split_lines( std::string_view text )
{
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while ( pos <= text.size() )
  {
    const auto nl = text.find( '\n', pos );
    if ( nl == std::string_view::npos )
    {
      if ( pos < text.size() )
      {
        lines.push_back( text.substr( pos ) );
      }
      break;
    }
    lines.push_back( text.substr( pos, nl - pos ) );
    pos = nl + 1;
  }
  return lines;
}

std::string_view strip_comment( std::string_view line )
{
  return trim( line.substr( 0, line.find( '#' ) ) );
}

bool default_names( const concept_class& cls )
{
  for ( std::size_t i = 0; i < cls.num_instances(); ++i )
  {
    if ( cls.instance_names()[i] != default_instance_name( i ) )
    {
      return false;
    }
  }
  return true;
}

std::string pad_left( const std::string& s, std::size_t width )
{
  return s.size() >= width ? s : std::string( width - s.size(), ' ' ) + s;
}

std::string pad_right( const std::string& s, std::size_t width )
{
  return s.size() >= width ? s : s + std::string( width - s.size(), ' ' );
}

} // namespace

concept_class parse_class( std::string_view text )
{
  std::vector<std::string> names;
  std::vector<concept_bits> concepts;
  std::map<concept_bits, std::size_t> first_line;
  std::size_t width = 0, width_line = 0;

  const auto lines = split_lines( text );
  for ( std::size_t ln = 1; ln <= lines.size(); ++ln )
  {
    const auto line = strip_comment( lines[ln - 1] );
    if ( line.empty() )
    {
      continue;
    }
    if ( line.starts_with( "instances:" ) )
    {
      if ( !concepts.empty() || !names.empty() )
      {
        throw parse_error( "instance header must precede all concepts and appear once", ln );
      }
      std::istringstream in{ std::string( line.substr( 10 ) ) };
      for ( std::string name; in >> name; )
      {
        if ( std::find( names.begin(), names.end(), name ) != names.end() )
        {
          throw parse_error( "repeated instance name '" + name + "'", ln );
        }
        names.push_back( name );
      }
      if ( names.empty() )
      {
        throw parse_error( "instance header lists no instances", ln );
      }
      continue;
    }
    if ( concepts.empty() )
    {
      width = line.size();
      width_line = ln;
      if ( width > max_instances )
      {
        throw parse_error( "at most " + std::to_string( max_instances ) + " instances are supported", ln );
      }
      if ( !names.empty() && names.size() != width )
      {
        throw parse_error( "header names " + std::to_string( names.size() ) + " instances but concept has " +
                               std::to_string( width ),
                           ln );
      }
    }
    else if ( line.size() != width )
    {
      throw parse_error( "ragged row: " + std::to_string( line.size() ) + " labels, expected " +
                             std::to_string( width ) + " as on line " + std::to_string( width_line ),
                         ln );
    }
    concept_bits c = 0;
    for ( std::size_t i = 0; i < line.size(); ++i )
    {
      if ( line[i] == '1' )
      {
        c |= concept_bits{ 1 } << i;
      }
      else if ( line[i] != '0' )
      {
        throw parse_error( std::string( "non-binary character '" ) + line[i] + "'", ln );
      }
    }
    const auto [it, inserted] = first_line.emplace( c, ln );
    if ( !inserted )
    {
      throw parse_error( "duplicate concept, first seen on line " + std::to_string( it->second ), ln );
    }
    concepts.push_back( c );
  }
  if ( concepts.empty() )
  {
    throw parse_error( "no concepts found" );
  }
  if ( names.empty() )
  {
    return concept_class( width, std::move( concepts ) );
  }
  try
  {
    return concept_class( std::move( names ), std::move( concepts ) );
  }
  catch ( const invalid_class& e )
  {
    throw parse_error( e.what() );
  }
}

std::string serialize_class( const concept_class& cls )
{
  std::string out;
  if ( !default_names( cls ) )
  {
    out += "instances:";
    for ( const auto& name : cls.instance_names() )
    {
      out += " " + name;
    }
    out += "\n";
  }
  for ( std::size_t i = 0; i < cls.size(); ++i )
  {
    out += cls.row( i ) + "\n";
  }
  return out;
}

std::string format_fragment( const fragment& f, const std::vector<std::string>& names )
{
  std::string s = "{";
  bool first = true;
  for ( auto [i, l] : entries( f ) )
  {
    s += ( first ? "(" : ",(" ) + names.at( i ) + "," + std::to_string( l ) + ")";
    first = false;
  }
  return s + "}";
}

fragment parse_fragment( std::string_view text, const std::vector<std::string>& names )
{
  auto s = trim( text );
  if ( s.size() < 2 || s.front() != '{' || s.back() != '}' )
  {
    throw parse_error( "fragment must be enclosed in braces" );
  }
  s = trim( s.substr( 1, s.size() - 2 ) );
  std::vector<std::pair<std::size_t, int>> e;
  while ( !s.empty() )
  {
    if ( s.front() != '(' )
    {
      throw parse_error( "expected '(' in fragment" );
    }
    const auto close = s.find( ')' );
    const auto comma = s.find( ',' );
    if ( close == std::string_view::npos || comma == std::string_view::npos || comma > close )
    {
      throw parse_error( "malformed fragment entry" );
    }
    const auto name = trim( s.substr( 1, comma - 1 ) );
    const auto label = trim( s.substr( comma + 1, close - comma - 1 ) );
    const auto it = std::find( names.begin(), names.end(), name );
    if ( it == names.end() )
    {
      throw parse_error( "unknown instance '" + std::string( name ) + "'" );
    }
    if ( label != "0" && label != "1" )
    {
      throw parse_error( "fragment labels must be 0 or 1" );
    }
    e.emplace_back( static_cast<std::size_t>( it - names.begin() ), label == "1" ? 1 : 0 );
    s = trim( s.substr( close + 1 ) );
    if ( !s.empty() )
    {
      if ( s.front() != ',' )
      {
        throw parse_error( "expected ',' between fragment entries" );
      }
      s = trim( s.substr( 1 ) );
    }
  }
  try
  {
    return make_fragment( e );
  }
  catch ( const malformed_fragment& ex )
  {
    throw parse_error( ex.what() );
  }
}

std::string format_labels( std::uint32_t pattern, std::size_t d )
{
  if ( d == 0 )
  {
    return "-";
  }
  std::string s;
  for ( std::size_t k = 0; k < d; ++k )
  {
    s += ( k ? " " : "" ) + std::to_string( ( pattern >> ( d - 1 - k ) ) & 1u );
  }
  return s;
}

std::string format_subset( std::span<const std::size_t> subset, const std::vector<std::string>& names )
{
  std::string s = "{";
  for ( std::size_t k = 0; k < subset.size(); ++k )
  {
    s += ( k ? "," : "" ) + names.at( subset[k] );
  }
  return s + "}";
}

teacher_mapping parse_mapping( std::string_view text, const concept_class& cls )
{
  std::vector<std::optional<fragment>> sets( cls.size() );
  const auto lines = split_lines( text );
  for ( std::size_t ln = 1; ln <= lines.size(); ++ln )
  {
    const auto line = strip_comment( lines[ln - 1] );
    if ( line.empty() )
    {
      continue;
    }
    const auto space = line.find_first_of( " \t" );
    if ( space == std::string_view::npos || line.front() != 'C' )
    {
      throw parse_error( "expected 'C<k> <fragment>'", ln );
    }
    std::size_t k = 0;
    const auto digits = line.substr( 1, space - 1 );
    if ( digits.empty() || !std::all_of( digits.begin(), digits.end(), []( char c ) { return c >= '0' && c <= '9'; } ) )
    {
      throw parse_error( "bad concept name '" + std::string( line.substr( 0, space ) ) + "'", ln );
    }
    k = std::stoul( std::string( digits ) );
    if ( k == 0 || k > cls.size() )
    {
      throw parse_error( "concept index out of range", ln );
    }
    if ( sets[k - 1] )
    {
      throw parse_error( "concept " + concept_name( k - 1 ) + " mapped twice", ln );
    }
    try
    {
      sets[k - 1] = parse_fragment( line.substr( space ), cls.instance_names() );
    }
    catch ( const parse_error& e )
    {
      throw parse_error( e.what(), ln );
    }
  }
  teacher_mapping mapping;
  for ( std::size_t i = 0; i < sets.size(); ++i )
  {
    if ( !sets[i] )
    {
      throw invalid_mapping( "mapping has no teaching set for " + concept_name( i ) );
    }
    mapping.sets.push_back( *sets[i] );
  }
  return mapping;
}

std::string format_mapping( const teacher_mapping& mapping, const concept_class& cls )
{
  std::string out;
  for ( std::size_t i = 0; i < mapping.sets.size(); ++i )
  {
    out += concept_name( i ) + " " + format_fragment( mapping.sets[i], cls.instance_names() ) + "\n";
  }
  return out;
}

std::string render_frequency_table( const round_record& record, const std::vector<std::string>& names,
                                    output_format style )
{
  const auto& t = record.table;
  std::ostringstream out;
  if ( style == output_format::json )
  {
    return table_json( t, names ).dump( 2 ) + "\n";
  }
  if ( style == output_format::csv )
  {
    out << "round,subset,pattern,count\n";
    for ( std::size_t s = 0; s < t.subsets.size(); ++s )
    {
      std::string subset;
      for ( auto i : t.subsets[s] )
      {
        subset += ( subset.empty() ? "" : " " ) + names.at( i );
      }
      for ( std::uint32_t p = 0; p < t.patterns_per_subset(); ++p )
      {
        auto labels = format_labels( p, t.d );
        labels.erase( std::remove( labels.begin(), labels.end(), ' ' ), labels.end() );
        out << t.round_index << "," << subset << "," << labels << "," << t.count( s, p ) << "\n";
      }
    }
    return out.str();
  }

  out << "round " << t.round_index << ": pool " << t.pool_size << ", fragment size " << t.d << "\n";
  const std::string corner = "labels";
  const auto first_width = std::max( corner.size(), format_labels( 0, t.d ).size() );
  std::vector<std::string> headers;
  std::vector<std::size_t> widths;
  for ( std::size_t s = 0; s < t.subsets.size(); ++s )
  {
    headers.push_back( format_subset( t.subsets[s], names ) );
    std::size_t w = headers.back().size();
    for ( std::uint32_t p = 0; p < t.patterns_per_subset(); ++p )
    {
      w = std::max( w, std::to_string( t.count( s, p ) ).size() );
    }
    widths.push_back( w );
  }
  out << pad_right( corner, first_width );
  for ( std::size_t s = 0; s < headers.size(); ++s )
  {
    out << "  " << pad_left( headers[s], widths[s] );
  }
  out << "\n";
  for ( std::uint32_t p = 0; p < t.patterns_per_subset(); ++p )
  {
    out << pad_right( format_labels( p, t.d ), first_width );
    for ( std::size_t s = 0; s < headers.size(); ++s )
    {
      out << "  " << pad_left( std::to_string( t.count( s, p ) ), widths[s] );
    }
    out << "\n";
  }
  return out.str();
}

std::string render_assignments( const compression_trace& trace, output_format style )
{
  const auto& cls = trace.cls;
  const auto& names = cls.instance_names();
  if ( style == output_format::json )
  {
    return trace_json( trace, false ).dump( 2 ) + "\n";
  }

  // rows in removal order, input order within a round
  std::vector<std::size_t> order;
  for ( const auto& r : trace.rounds )
  {
    for ( auto i : r.pool_before )
    {
      if ( std::find( r.pool_after.begin(), r.pool_after.end(), i ) == r.pool_after.end() )
      {
        order.push_back( i );
      }
    }
  }

  std::ostringstream out;
  if ( style == output_format::csv )
  {
    out << "concept,labels,round,fragment\n";
    for ( auto i : order )
    {
      for ( const auto& f : trace.fragments_of( i ) )
      {
        out << concept_name( i ) << "," << cls.row( i ) << "," << trace.round_of( i ) << ",\""
            << format_fragment( f, names ) << "\"\n";
      }
    }
    return out.str();
  }

  std::size_t name_width = std::string( "concept" ).size();
  for ( auto i : order )
  {
    name_width = std::max( name_width, concept_name( i ).size() );
  }
  const auto label_width = std::max<std::size_t>( 6, cls.num_instances() );
  const std::size_t round_width = 5;
  out << pad_right( "concept", name_width ) << "  " << pad_right( "labels", label_width ) << "  "
      << pad_right( "round", round_width ) << "  fragments\n";
  for ( auto i : order )
  {
    out << pad_right( concept_name( i ), name_width ) << "  " << pad_right( cls.row( i ), label_width ) << "  "
        << pad_right( std::to_string( trace.round_of( i ) ), round_width ) << " ";
    for ( const auto& f : trace.fragments_of( i ) )
    {
      out << " " << format_fragment( f, names );
    }
    out << "\n";
  }
  const auto unassigned = trace.unassigned_fragments();
  out << "assigned " << trace.fragment_index.size() << " of " << trace.fragment_index.size() + unassigned.size()
      << " fragments\n";
  out << "unassigned";
  if ( unassigned.empty() )
  {
    out << " (none)";
  }
  for ( const auto& f : unassigned )
  {
    out << " " << format_fragment( f, names );
  }
  out << "\n";
  return out.str();
}

std::string render_stall( const stall& s, const concept_class& cls )
{
  std::ostringstream out;
  out << "stall in round " << s.round_index << ": no fragment has frequency 1\n";
  out << "pool";
  for ( auto i : s.pool )
  {
    out << " " << concept_name( i ) << "=" << cls.row( i );
  }
  out << "\n";
  round_record rec;
  rec.round_index = s.round_index;
  rec.table = s.table;
  out << render_frequency_table( rec, cls.instance_names(), output_format::text );
  return out.str();
}

std::string render_trace_figures( const compression_trace& trace )
{
  std::string out;
  for ( const auto& r : trace.rounds )
  {
    out += render_frequency_table( r, trace.cls.instance_names(), output_format::text ) + "\n";
  }
  return out + render_assignments( trace, output_format::text );
}

} // namespace conceptlab
