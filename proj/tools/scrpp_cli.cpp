// scrpp: field setup, single constructions, criterion-vs-oracle sweeps and sparse-form search.

#include <CLI11.hpp>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "scrpp/families.hpp"
#include "scrpp/field.hpp"
#include "scrpp/mu_group.hpp"
#include "scrpp/report.hpp"
#include "scrpp/sweep.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kDisagree = 2;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

std::string join(const std::vector<std::uint32_t>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out + "]";
}

int field_info(std::uint32_t p, std::uint32_t n, bool json) {
  const scrpp::Field f = scrpp::Field::build(p, n);
  const scrpp::MuGroup mu(f);
  const auto delta = scrpp::canonical_delta(f);
  if (json) {
    nlohmann::json j;
    j["p"] = p;
    j["n"] = n;
    j["q"] = f.q();
    j["q2"] = f.q2();
    j["modulus_q"] = f.spec().modulus_q;
    j["modulus_q2"] = f.spec().modulus_q2;
    j["spec"] = f.spec().serialize();
    j["primitive_root"] = f.primitive_root().value;
    j["mu_generator"] = mu.generator().value;
    j["mu_size"] = mu.size();
    j["canonical_delta"] = delta.value;
    std::cout << j.dump() << '\n';
    return kOk;
  }
  std::cout << "q=" << f.q() << " q^2=" << f.q2() << '\n'
            << "modulus F_q over F_p (low first): " << join(f.spec().modulus_q) << '\n'
            << "modulus F_q^2 over F_q (low first, indices): " << join(f.spec().modulus_q2) << '\n'
            << "spec: " << f.spec().serialize() << '\n'
            << "primitive root: " << f.format(f.primitive_root()) << " (index " << f.primitive_root().value << ")\n"
            << "mu generator: " << f.format(mu.generator()) << " (index " << mu.generator().value << ")\n"
            << "mu size: " << mu.size() << '\n'
            << "canonical delta: " << f.format(delta) << " (index " << delta.value << ")\n";
  return kOk;
}

int construct(const std::string& family, std::uint64_t q, const std::string& spec_text,
              const std::vector<std::string>& kv, std::uint64_t s, bool json) {
  if (!scrpp::is_family(family)) throw CLI::ValidationError("--family", "unknown family '" + family + "'");
  scrpp::ParamMap params;
  for (const auto& item : kv) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw CLI::ValidationError("--param", "expected k=v, got '" + item + "'");
    params[item.substr(0, eq)] = item.substr(eq + 1);
  }
  if (s) params["s"] = std::to_string(s);
  const scrpp::FieldSpec spec = spec_text.empty() ? scrpp::default_spec(q) : scrpp::FieldSpec::parse(spec_text);
  if (q && spec.q != q) throw CLI::ValidationError("--spec", "field spec has q=" + std::to_string(spec.q));
  const scrpp::FamilyContext ctx(spec);
  const auto rep = scrpp::predict_and_check(ctx, family, params);
  std::cout << (json ? scrpp::to_json_line(rep) + "\n" : scrpp::describe(rep));
  return kOk;
}

int verify(scrpp::SweepConfig cfg) {
  cfg.validate();
  std::ofstream out(cfg.output, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot open " << cfg.output << '\n';
    return kUsage;
  }
  const auto res = scrpp::run_sweep(cfg, [&](const scrpp::PermReport& r) {
    if (cfg.format == scrpp::OutputFormat::jsonl) out << scrpp::to_json_line(r) << '\n';
  });
  if (cfg.format == scrpp::OutputFormat::csv) out << scrpp::summary_csv(res.summaries);
  out.close();
  if (!out) {
    std::cerr << "error: failed writing " << cfg.output << '\n';
    return kUsage;
  }
  if (cfg.format == scrpp::OutputFormat::jsonl) {
    // the human summary goes next to the machine records
    std::ofstream csv(cfg.output + ".summary.csv", std::ios::binary);
    csv << scrpp::summary_csv(res.summaries);
    if (!csv) {
      std::cerr << "error: failed writing " << cfg.output << ".summary.csv\n";
      return kUsage;
    }
  }
  std::cout << scrpp::format_summary(res);
  return res.ok() ? kOk : kDisagree;
}

int search(const std::string& form, std::uint64_t q, const std::string& path, unsigned threads) {
  static const std::map<std::string, std::size_t> kForms = {
      {"binomial", 2}, {"trinomial", 3}, {"quadrinomial", 4}, {"pentanomial", 5}};
  const auto it = kForms.find(form);
  if (it == kForms.end()) throw CLI::ValidationError("--form", "unknown form '" + form + "'");
  if (q * q > scrpp::oracle_bound()) throw CLI::ValidationError("--q", "q^2 exceeds the oracle bound");
  const scrpp::FamilyContext ctx(scrpp::default_spec(q));
  const auto hits = scrpp::search(ctx, it->second, threads);
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot open " << path << '\n';
    return kUsage;
  }
  for (const auto& h : hits) out << scrpp::to_json_line(h) << '\n';
  out.close();
  if (!out) return kUsage;
  std::cout << hits.size() << " distinct " << form << " PPs over F_" << q * q << '\n';
  for (const auto& h : hits) std::cout << "  " << h.report.family << ": " << h.report.polynomial << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Permutation polynomials x^s B(x^{q-1}) C(x^{q-1}) with self-conjugate reciprocal C"};
  app.require_subcommand(1);

  std::uint32_t p = 0, n = 1;
  bool info_json = false;
  auto* info = app.add_subcommand("field-info", "Moduli, generator, mu_{q+1} and canonical delta of F_{p^n} and F_{p^{2n}}");
  info->add_option("--p", p, "Characteristic")->required();
  info->add_option("--n", n, "Degree of F_q over F_p");
  info->add_flag("--json", info_json, "JSON output");

  std::string family, spec_text;
  std::uint64_t cq = 0, cs = 0;
  std::vector<std::string> kv;
  bool cjson = false;
  auto* cons = app.add_subcommand("construct", "Build one instance, predict it and run the oracle");
  cons->add_option("--family", family, "Family tag")->required();
  cons->add_option("--q", cq, "Field size q (default moduli)");
  cons->add_option("--spec", spec_text, "Explicit field spec p,n,modulus_q,modulus_q2 (coefficients colon-separated, low first)");
  cons->add_option("--param", kv, "Parameter k=v (elements as canonical indices, polynomials as i0:i1:...)");
  cons->add_option("--s", cs, "Exponent s (default: the family's choice)");
  cons->add_flag("--json", cjson, "JSON output");

  scrpp::SweepConfig cfg;
  std::string families, qlist, format = "jsonl";
  std::uint64_t samples = 0;
  auto* ver = app.add_subcommand("verify", "Sweep families over fields, comparing each prediction with the oracle");
  ver->add_option("--families", families, "Comma-separated family tags, or 'all'")->required();
  ver->add_option("--q-list", qlist, "Comma-separated prime powers")->required();
  auto* exh = ver->add_flag("--exhaustive", cfg.exhaustive, "Every parameter tuple");
  auto* smp = ver->add_option("--samples", samples, "Seeded sample size per family and field");
  exh->excludes(smp);
  ver->add_option("--seed", cfg.seed, "Sampling seed");
  ver->add_option("--delta-rand", cfg.delta_rand, "Extra random delta per instance");
  ver->add_option("--out", cfg.output, "Output path")->required();
  ver->add_option("--format", format, "jsonl or csv")->check(CLI::IsMember({"jsonl", "csv"}));
  ver->add_option("--threads", cfg.threads, "Worker threads (0 = all cores)");
  ver->add_option("--random-instances", cfg.random_instances, "Random instances for thm3.2");

  std::string form, spath;
  std::uint64_t sq = 0;
  unsigned sthreads = 0;
  auto* srch = app.add_subcommand("search", "Predicted and oracle-verified PPs with a given number of terms");
  srch->add_option("--form", form, "binomial, trinomial, quadrinomial or pentanomial")->required();
  srch->add_option("--q", sq, "Field size q")->required();
  srch->add_option("--out", spath, "Output path (JSONL)")->required();
  srch->add_option("--threads", sthreads, "Worker threads (0 = all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*info) return field_info(p, n, info_json);
    if (*cons) {
      if (!cq && spec_text.empty()) throw CLI::ValidationError("construct", "give --q or --spec");
      return construct(family, cq, spec_text, kv, cs, cjson);
    }
    if (*ver) {
      cfg.families = families == "all" ? scrpp::family_tags() : split(families, ',');
      for (const auto& t : split(qlist, ',')) {
        try {
          cfg.q_list.push_back(std::stoull(t));
        } catch (const std::exception&) {
          throw CLI::ValidationError("--q-list", "not an integer: '" + t + "'");
        }
      }
      cfg.sample_count = samples;
      cfg.format = format == "csv" ? scrpp::OutputFormat::csv : scrpp::OutputFormat::jsonl;
      return verify(cfg);
    }
    if (*srch) return search(form, sq, spath, sthreads);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
