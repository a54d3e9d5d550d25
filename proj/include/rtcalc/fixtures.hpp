#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rtcalc/fitter.hpp"
#include "rtcalc/oracle.hpp"
#include "rtcalc/parse.hpp"

namespace rtcalc {

/// One record of a fixture file.
///
/// Ids take one of these forms:
///   $NAME            macro visible to records with the same location
///   T.pqrs[#k]       component of table T (1-based indices); #k marks the
///                    k-th listing of a label printed more than once
///   kappa            scalar curvature
///   group.coef       coefficient of a relation group
///   group.if:atom    hypothesis "lhs = rhs" of a group, solved for atom
struct Fixture {
  std::string id;
  std::string location;
  std::string quote;
  std::string expression;
  std::size_t line = 0;
};

struct FixtureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Tab separated, UTF-8, LF; blank lines and lines starting with '#' skipped.
std::vector<Fixture> parse_fixtures(std::string_view text);
std::vector<Fixture> load_fixture_file(const std::string& path);
/// The fixture set compiled into the library.
const std::vector<Fixture>& bundled_fixtures();

/// Macros in scope at `location`: its own definitions over those of "global".
Bindings fixture_bindings(const std::vector<Fixture>& fixtures, std::string_view location, const Context& ctx);

/// Expected discrepancy: a fixture id whose printed value is known to be
/// wrong, with a short diagnosis.
struct KnownDiscrepancy {
  std::string id;
  std::string note;
};

std::vector<KnownDiscrepancy> parse_known_discrepancies(std::string_view text);
const std::vector<KnownDiscrepancy>& bundled_known_discrepancies();

enum class Verdict { computed_correct, paper_correct, both_agree, inconclusive };
enum class Outcome { matched, ledgered, failed };

const char* to_string(Verdict v);
const char* to_string(Outcome o);

struct SampleEvidence {
  std::vector<std::pair<std::string, std::string>> point;  // atom -> value
  std::string computed;
  std::string paper;
  std::string oracle;
};

struct LedgerEntry {
  std::string fixture_id;
  std::string computed;
  std::string paper;
  Verdict verdict = Verdict::inconclusive;
  std::vector<SampleEvidence> evidence;
  /// Labels whose computed value equals the printed one, and similar leads.
  std::vector<std::string> hints;
  std::string note;
};

struct FixtureResult {
  std::string id;
  std::string location;
  Outcome outcome = Outcome::failed;
  std::string computed;
  std::string paper;
  std::string detail;
};

/// A statement checked without a printed formula, such as a nonexistence claim.
struct ClaimResult {
  std::string id;
  std::string statement;
  bool held = false;
  std::string detail;
};

struct VerificationReport {
  std::uint64_t seed = oracle::kDefaultSeed;
  std::vector<FixtureResult> results;
  std::vector<LedgerEntry> ledger;
  std::vector<ClaimResult> claims;

  std::size_t count(Outcome o) const;
  std::size_t failed_claims() const;
  bool passed() const { return count(Outcome::failed) == 0 && failed_claims() == 0; }
  /// "fixtures: N total, M matched, L ledgered, F failed"
  std::string summary() const;
  void append(VerificationReport&& other);
};

struct VerifyOptions {
  std::uint64_t seed = oracle::kDefaultSeed;
  unsigned samples = 20;
  /// Defaults to the bundled sets when empty.
  std::optional<std::vector<Fixture>> fixtures;
  std::optional<std::vector<KnownDiscrepancy>> known;
};

/// Component tables: R, S, kappa, U, H, D, C, W, K, P and the Lie tables
/// LVR, LVC, LVW, LVK, LVP along d/dx.
VerificationReport verify_paper(const VerifyOptions& opts = {});
/// Relation groups (solitons, inheritance, collineations) and claims.
VerificationReport verify_theorems(const VerifyOptions& opts = {});
/// Both of the above, in that order.
VerificationReport verify_all(const VerifyOptions& opts = {});

/// Table names that verify_paper understands, and the relation groups that
/// verify_theorems understands.
const std::vector<std::string>& fixture_tables();
const std::vector<std::string>& fixture_groups();

/// Symbolic fit of a relation group with its hypotheses from `fixtures`
/// applied. Throws FixtureError for an unknown group.
FitResult fit_group(std::string_view group, const std::vector<Fixture>& fixtures);

}  // namespace rtcalc
