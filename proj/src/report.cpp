#include "scrpp/report.hpp"

#include <json.hpp>
#include <sstream>

namespace scrpp {

std::string to_json_line(const PermReport& r) {
  nlohmann::json j;
  j["family"] = r.family;
  j["q"] = r.q;
  j["field"] = r.spec.serialize();
  j["params"] = r.params;
  j["s"] = r.s;
  j["gcd_ok"] = r.gcd_ok;
  j["predicted"] = to_string(r.predicted);
  j["oracle_pp"] = r.oracle_pp;
  j["agree"] = r.agree;
  j["theorem"] = r.theorem;
  j["reason"] = r.reason;
  j["notes"] = r.notes;
  j["polynomial"] = r.polynomial;
  j["terms"] = r.terms;
  if (r.printed_form_matches) j["printed_form_matches"] = *r.printed_form_matches;
  if (r.delta_consistent) j["delta_consistent"] = *r.delta_consistent;
  nlohmann::json alt = nlohmann::json::object();
  for (const auto& [k, v] : r.alternatives) alt[k] = to_string(v);
  j["alternatives"] = alt;
  return j.dump();
}

std::string describe(const PermReport& r) {
  std::ostringstream os;
  os << "family:     " << r.family << " (q=" << r.q << ")\n";
  os << "params:    ";
  for (const auto& [k, v] : r.params) os << ' ' << k << '=' << v;
  os << "\ns:          " << r.s << (r.gcd_ok ? " (gcd(s,q-1)=1)" : " (gcd(s,q-1)>1)") << '\n';
  os << "polynomial: " << r.polynomial << "  [" << r.terms << " terms]\n";
  if (r.printed_form_matches)
    os << "printed form " << (*r.printed_form_matches ? "equals" : "DIFFERS FROM") << " the assembled product\n";
  std::string why;
  for (const auto& [k, v] : r.reason) {
    if (!why.empty()) why += ", ";
    why += k + "=" + v;
  }
  os << "predicted:  ";
  switch (r.predicted) {
    case Prediction::yes: os << "PP"; break;
    case Prediction::no: os << "not PP"; break;
    case Prediction::not_covered: os << "not covered"; break;
  }
  os << " via " << r.theorem << (why.empty() ? "" : " (" + why + ")") << '\n';
  os << "oracle:     " << (r.oracle_pp ? "PP" : "not PP") << '\n';
  os << (r.predicted == Prediction::not_covered ? "outside hypotheses" : r.agree ? "agree" : "DISAGREE") << '\n';
  for (const auto& [k, v] : r.alternatives) os << "alternative " << k << ": " << to_string(v) << '\n';
  if (r.delta_consistent) os << "delta-independent: " << (*r.delta_consistent ? "yes" : "NO") << '\n';
  for (const auto& n : r.notes) os << "note: " << n << '\n';
  return os.str();
}

void FamilySummary::add(const PermReport& r) {
  ++instances;
  if (r.oracle_pp) ++oracle_pp;
  if (r.predicted == Prediction::not_covered) ++not_covered;
  else if (r.agree) ++agree;
  else ++disagree;
  if (r.printed_form_matches) {
    ++printed_form_checked;
    if (!*r.printed_form_matches) ++printed_form_mismatch;
  }
  if (r.delta_consistent) {
    ++delta_checked;
    if (!*r.delta_consistent) ++delta_inconsistent;
  }
  for (const auto& [k, v] : r.alternatives) {
    if (v == Prediction::not_covered) continue;
    ++alt_covered[k];
    if ((v == Prediction::yes) == r.oracle_pp) ++alt_agree[k];
  }
}

std::string summary_csv(const std::vector<FamilySummary>& rows) {
  std::ostringstream os;
  os << "family,q,instances,agree,disagree,not_covered,oracle_pp,printed_form_mismatch,delta_inconsistent,alternatives\n";
  for (const auto& s : rows) {
    os << s.family << ',' << s.q << ',' << s.instances << ',' << s.agree << ',' << s.disagree << ',' << s.not_covered
       << ',' << s.oracle_pp << ',' << s.printed_form_mismatch << ',' << s.delta_inconsistent << ',';
    bool first = true;
    for (const auto& [k, covered] : s.alt_covered) {
      const auto it = s.alt_agree.find(k);
      os << (first ? "" : " ") << k << '=' << (it == s.alt_agree.end() ? 0 : it->second) << '/' << covered;
      first = false;
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace scrpp
