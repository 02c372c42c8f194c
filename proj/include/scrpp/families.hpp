#pragma once

// Named permutation-polynomial families: each tag fixes how B, C and s are
// built from a parameter map, which closed-form criterion predicts the
// answer, and (for the explicit sparse families) the printed polynomial.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "scrpp/criteria.hpp"
#include "scrpp/field.hpp"
#include "scrpp/mu_group.hpp"
#include "scrpp/pp_engine.hpp"

namespace scrpp {

/// Parameters by name. Elements are decimal indices in the canonical encoding;
/// polynomials ("B", "C", "f") are colon-separated index lists, lowest degree first.
using ParamMap = std::map<std::string, std::string>;

enum class Prediction { yes, no, not_covered };
std::string to_string(Prediction p);

struct PermReport {
  FieldSpec spec;
  std::uint64_t q = 0;
  std::string family;
  ParamMap params;
  std::uint64_t s = 0;
  bool gcd_ok = false;
  Prediction predicted = Prediction::not_covered;
  bool oracle_pp = false;
  bool agree = false;
  std::string theorem;
  std::map<std::string, std::string> reason;
  std::vector<std::string> notes;
  std::string polynomial;
  std::size_t terms = 0;
  /// The assembled x^s B(x^{q-1}) C(x^{q-1}) (exponents reduced).
  SparsePoly pp;
  /// Explicit families only: printed form equals the assembled product on all of F_{q^2}.
  std::optional<bool> printed_form_matches;
  /// Predictions under alternative readings (stated residue rule, other trace formula, printed claim).
  std::map<std::string, Prediction> alternatives;
  /// Set when extra delta values were supplied: every delta gave the same verdict.
  std::optional<bool> delta_consistent;
};

/// A field with its mu-group and oracle; not copyable (members refer to the field).
class FamilyContext {
 public:
  explicit FamilyContext(const FieldSpec& spec, std::uint64_t bound = oracle_bound());
  FamilyContext(const FamilyContext&) = delete;
  FamilyContext& operator=(const FamilyContext&) = delete;

  const Field& field() const { return *field_; }
  const MuGroup& mu() const { return *mu_; }
  const PermutationOracle& oracle() const { return *oracle_; }

 private:
  std::unique_ptr<Field> field_;
  std::unique_ptr<MuGroup> mu_;
  std::unique_ptr<PermutationOracle> oracle_;
};

const std::vector<std::string>& family_tags();
bool is_family(const std::string& tag);
/// False when the family's characteristic restriction excludes this field.
bool family_applies(const Field& field, const std::string& tag);
/// Explicit sparse families (the printed polynomials).
bool is_explicit_family(const std::string& tag);

/// Builds the instance, predicts from the matching criterion, runs the oracle.
/// Out-of-hypothesis parameters give Prediction::not_covered; the oracle still runs.
/// Throws std::invalid_argument for an unknown tag or malformed parameters.
PermReport predict_and_check(const FamilyContext& ctx, const std::string& tag, const ParamMap& params);

/// The printed sparse polynomial of an explicit family (no hypothesis checks).
SparsePoly corollary_builder(const Field& field, const std::string& tag, const ParamMap& params);

struct SpaceOptions {
  /// Extra random delta values per instance for the delta-as-device criteria.
  int delta_rand = 0;
  std::uint64_t seed = 0;
  /// Random instances for thm3.2 (it has no finite exhaustive space).
  std::uint64_t random_count = 500;
  /// When set, B = x^m only for these m (still filtered by validity).
  std::optional<std::vector<std::uint64_t>> m_values;
  /// Highest degree of f for thm3.17.
  int max_irreducible_degree = 4;
  /// Largest n for thm3.16.
  int max_linear_power = 5;
};

/// Every parameter tuple of the family at this field, in canonical order.
std::vector<ParamMap> parameter_space(const FamilyContext& ctx, const std::string& tag, const SpaceOptions& opts);

/// Counter-based generator: the k-th draw depends only on (seed, k).
std::uint64_t splitmix64(std::uint64_t seed, std::uint64_t counter);

}  // namespace scrpp
