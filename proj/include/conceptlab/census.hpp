#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "core.hpp"

namespace conceptlab
{

enum class check_kind
{
  lemma1,
  no_stall,
  non_clash,
  nctd_le_vcdim
};

inline constexpr std::array<check_kind, 4> all_checks{ check_kind::lemma1, check_kind::no_stall, check_kind::non_clash,
                                                       check_kind::nctd_le_vcdim };

std::string_view to_string( check_kind check );
std::optional<check_kind> parse_check_kind( std::string_view name );

enum class check_status
{
  pass,
  fail,
  /*! search budget ran out before the check could be decided */
  inconclusive
};

std::string_view to_string( check_status status );

struct check_outcome
{
  check_status status = check_status::pass;
  std::string evidence;
  /*! exact NCTD when the check computed it */
  std::optional<std::size_t> nctd;
  std::size_t vcdim = 0;

  friend bool operator==( const check_outcome&, const check_outcome& ) = default;
};

/*! \brief Runs one census check on one class. Never throws for a check failure. */
check_outcome run_check( const concept_class& cls, check_kind check, std::uint64_t budget );

struct census_config
{
  std::size_t n = 3;
  std::size_t min_size = 1;
  /*! 0 means 2^n */
  std::size_t max_size = 0;
  bool dedup = false;
  std::vector<check_kind> checks{ all_checks.begin(), all_checks.end() };
  std::uint64_t seed = 0;
  /*! 0 selects exhaustive mode; otherwise this many random classes */
  std::size_t sample_count = 0;
  std::uint64_t budget = 1'000'000;
  std::size_t threads = 0;
  bool stop_on_failure = false;
};

/*! \brief Replayable record of a failed or undecided check. */
struct failure_witness
{
  std::string class_text;
  check_kind check = check_kind::lemma1;
  check_status status = check_status::fail;
  std::string evidence;
  std::uint64_t budget = 0;

  friend bool operator==( const failure_witness&, const failure_witness& ) = default;
};

struct check_tally
{
  std::uint64_t passed = 0;
  std::uint64_t failed = 0;
  std::uint64_t inconclusive = 0;

  friend bool operator==( const check_tally&, const check_tally& ) = default;
};

struct census_result
{
  std::size_t n = 0;
  std::uint64_t classes_checked = 0;
  std::map<check_kind, check_tally> tallies;
  /*! one witness per failed check */
  std::vector<failure_witness> failures;
  /*! checks the search budget left undecided */
  std::vector<failure_witness> undecided;
  /*! (vcdim, exact NCTD) -> number of classes */
  std::map<std::pair<std::size_t, std::size_t>, std::uint64_t> histogram;
  double wall_seconds = 0.0;

  std::uint64_t total_failures() const;

  /*! equality ignores wall time */
  friend bool operator==( const census_result& a, const census_result& b )
  {
    return a.n == b.n && a.classes_checked == b.classes_checked && a.tallies == b.tallies &&
           a.failures == b.failures && a.undecided == b.undecided && a.histogram == b.histogram;
  }
};

/*! \brief The ten-concept class over x1..x4 used as the running example. */
concept_class builtin_c1();

/*! \brief Bit c of the result is set iff the concept with code c is in the class. Requires n <= 6. */
std::uint64_t class_mask( const concept_class& cls );

/*! \brief Class whose concepts are the set bits of `mask`, in ascending code order. */
concept_class class_from_mask( std::size_t n, std::uint64_t mask );

/*! \brief Least mask over all instance permutations composed with per-instance label flips. */
std::uint64_t canonical_mask( std::size_t n, std::uint64_t mask );

/*! \brief Upper limit on the number of classes an exhaustive enumeration may visit. */
inline constexpr std::uint64_t enumeration_cap = 100'000'000;

/*! \brief Streams the classes of an exhaustive census in ascending mask order.

  Classes of every admissible size are merged so that masks come out in
  ascending order whatever size filter is set. With dedup, only masks equal
  to their canonical form are produced.
*/
class class_enumerator
{
public:
  explicit class_enumerator( const census_config& config );

  std::optional<std::uint64_t> next_mask();
  std::optional<concept_class> next();

  /*! number of classes before dedup */
  std::uint64_t space_size() const noexcept { return space_; }

private:
  std::size_t n_;
  bool dedup_;
  std::uint64_t space_ = 0;
  // per class size: the next unvisited mask of that size, if any
  std::vector<std::optional<unsigned __int128>> heads_;
  unsigned __int128 limit_;
};

/*! \brief m distinct concepts drawn uniformly from {0,1}^n with a portable seeded generator. */
concept_class random_class( std::size_t n, std::size_t m, std::uint64_t seed );

/*! \brief Runs every enabled check on every enumerated or sampled class. */
census_result run_census( const census_config& config );

/*! \brief Reruns the witness's check on its class; true iff the recorded outcome recurs exactly. */
bool replay( const failure_witness& witness );

} // namespace conceptlab
