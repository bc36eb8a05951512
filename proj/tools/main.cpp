// Command line front end: build networks, run censuses, cross-check the
// closed forms, enumerate admissible words, and verify the necklace
// injection.  Exit codes: 0 ok, 2 bad arguments, 3 cap exceeded,
// 4 verification failure, 5 non-monotone network.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numeric>
#include <array>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "bandyn/ban.hpp"
#include "bandyn/counting.hpp"
#include "bandyn/injection.hpp"
#include "bandyn/numtheory.hpp"
#include "bandyn/words.hpp"

using nlohmann::json;
using namespace bandyn;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitArgs = 2;
constexpr int kExitCap = 3;
constexpr int kExitVerification = 4;
constexpr int kExitNonMonotone = 5;

struct Output {
  std::string path;  // empty = stdout
  void write(const std::string& text) const {
    if (path.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot open output file: " + path);
    out << text;
  }
};

int default_cap() {
  if (const char* env = std::getenv("BANDYN_CAP")) {
    int cap = std::atoi(env);
    if (cap >= 1 && cap <= kNetworkCap) return cap;
  }
  return kNetworkCap;
}

std::pair<int, int> parse_range(const std::string& text) {
  auto dots = text.find("..");
  if (dots == std::string::npos) {
    int v = std::stoi(text);
    return {v, v};
  }
  int lo = std::stoi(text.substr(0, dots));
  int hi = std::stoi(text.substr(dots + 2));
  if (lo > hi) throw std::invalid_argument("empty range: " + text);
  return {lo, hi};
}

Gate gate_from_string(const std::string& name) {
  if (name == "or" || name == "OR") return Gate::Or;
  if (name == "and" || name == "AND") return Gate::And;
  throw std::invalid_argument("unknown gate: " + name);
}

std::string config_string(Config x, int n) {
  std::string s(static_cast<std::size_t>(n), '0');
  for (int i = 0; i < n; ++i)
    if ((x >> i) & 1) s[static_cast<std::size_t>(i)] = '1';
  return s;
}

// --- census ---------------------------------------------------------------

json census_json(int n, const AttractorReport& rep, bool orbits) {
  json j;
  j["n"] = n;
  j["omega"] = rep.omega;
  j["recurrent"] = rep.recurrent_count;
  json maps;
  for (const char* key : {"X", "Xt", "A", "At"}) maps[key] = json::object();
  for (auto& [p, v] : rep.X) maps["X"][std::to_string(p)] = v.str();
  for (auto& [p, v] : rep.Xt) maps["Xt"][std::to_string(p)] = v.str();
  for (auto& [p, v] : rep.A) maps["A"][std::to_string(p)] = v.str();
  for (auto& [p, v] : rep.At) maps["At"][std::to_string(p)] = v.str();
  j["maps"] = maps;
  json h = json::object();
  for (auto& [k, v] : rep.instability_histogram) h[std::to_string(k)] = v;
  j["instability_histogram"] = h;
  if (orbits) {
    json list = json::array();
    for (const auto& orbit : rep.attractors) {
      json o = json::array();
      for (Config x : orbit) o.push_back(config_string(x, n));
      list.push_back(o);
    }
    j["attractors"] = list;
  }
  return j;
}

std::string census_csv(const std::string& instance, const AttractorReport& rep) {
  std::ostringstream out;
  out << "instance,omega,p,X,Xt,A,At\n";
  for (auto& [p, v] : rep.X)
    out << instance << ',' << rep.omega << ',' << p << ',' << v.str() << ','
        << rep.Xt.at(p).str() << ',' << rep.A.at(p).str() << ','
        << rep.At.at(p).str() << '\n';
  if (!rep.instability_histogram.empty()) {
    out << "# instabilities";
    for (auto& [k, v] : rep.instability_histogram) out << ' ' << k << '=' << v;
    out << '\n';
  }
  return out.str();
}

int run_census(const NetworkSpec& net, const std::string& instance,
               const std::string& format, bool orbits, int cap,
               const Output& out) {
  auto rep = attractor_census(net, CensusOptions{cap, orbits});
  if (format == "json")
    out.write(census_json(net.n, rep, orbits).dump(2) + "\n");
  else
    out.write(census_csv(instance, rep));
  return kExitOk;
}

// --- crosscheck -------------------------------------------------------------

struct CrosscheckRow {
  std::string instance;
  std::uint64_t p = 0;
  std::string kind;  // "X", "omega", "attractor-bound", "growth-bound"
  std::string closed, measured;
  bool match = false;
  bool anomaly = false;  // expected disagreement, recorded not failed
  std::string note;
};

void crosscheck_instance(const TypeParams& tp, const NetworkSpec& net, int cap,
                         std::vector<CrosscheckRow>& rows, bool& failed) {
  std::ostringstream name;
  switch (tp.type) {
    case NetworkTag::PosBac: name << "pos-bac(" << tp.n << ")"; break;
    case NetworkTag::NegBac: name << "neg-bac(" << tp.n << ")"; break;
    case NetworkTag::PosBad: name << "pos-bad(" << tp.l << "," << tp.r << ")"; break;
    case NetworkTag::MixedBad: name << "mixed-bad(" << tp.l << "," << tp.r << ")"; break;
    case NetworkTag::NegBad: name << "neg-bad(" << tp.l << "," << tp.r << ")"; break;
    default: name << "generic"; break;
  }
  const std::string instance = name.str();
  auto rep = attractor_census(net, CensusOptions{cap, false});
  const bool mixed = tp.type == NetworkTag::MixedBad;
  {
    CrosscheckRow row;
    row.instance = instance;
    row.kind = "omega";
    row.closed = std::to_string(tp.omega);
    row.measured = rep.omega_valid ? std::to_string(rep.omega) : "overflow";
    row.match = rep.omega_valid && rep.omega == tp.omega;
    row.anomaly = !row.match && mixed;
    if (row.anomaly) row.note = "mixed order defect";
    if (!row.match && !row.anomaly) failed = true;
    rows.push_back(row);
  }
  for (auto p : divisors(tp.omega)) {
    CrosscheckRow row;
    row.instance = instance;
    row.p = p;
    row.kind = "X";
    row.closed = closed_form_X(tp, p).str();
    row.measured = (rep.omega_valid && rep.omega % p == 0)
                       ? rep.X.at(p).str()
                       : "undefined";
    row.match = row.closed == row.measured;
    if (!row.match) {
      const bool at_delta = tp.Delta % p == 0;
      row.anomaly = mixed && at_delta;
      if (row.anomaly) row.note = "p | Delta: forced fixed point";
      if (!row.anomaly) failed = true;
    }
    rows.push_back(row);
  }
  if (rep.omega_valid) {
    auto verdict = attractor_bound_verdict(rep, tp);
    CrosscheckRow row;
    row.instance = instance;
    row.kind = "attractor-bound";
    row.closed = "X/omega <= A <= 2 At";
    row.measured = std::string(verdict.lower_ok ? "lower ok" : "lower FAIL") +
                   "; " + (verdict.upper_ok ? "upper ok" : "upper FAIL");
    row.match = verdict.lower_ok && verdict.upper_ok;
    if (verdict.exception_flag) {
      row.anomaly = true;
      row.note = "known exception parameters";
    } else if (tp.is_bad_type() && bound_domain_excluded(tp.Delta, tp.K)) {
      row.anomaly = true;
      row.note = "outside the bound's domain";
    }
    if (!row.match && !row.anomaly) failed = true;
    rows.push_back(row);

    CrosscheckRow t2;
    t2.instance = instance;
    t2.kind = "growth-bound";
    t2.closed = "A <= (phi*Y)(omega)/omega";
    t2.match = growth_bound_holds(tp, rep.A.at(rep.omega));
    t2.measured = t2.match ? "ok" : "FAIL";
    if (!t2.match) failed = true;
    rows.push_back(t2);
  }
}

std::string crosscheck_csv(const std::vector<CrosscheckRow>& rows) {
  std::ostringstream out;
  out << "schema,instance,kind,p,closed,measured,match,anomaly,note\n";
  for (const auto& r : rows)
    out << "1," << r.instance << ',' << r.kind << ',' << (r.p ? std::to_string(r.p) : "")
        << ',' << r.closed << ',' << r.measured << ',' << (r.match ? 1 : 0)
        << ',' << (r.anomaly ? 1 : 0) << ',' << r.note << '\n';
  return out.str();
}

json crosscheck_json(const std::vector<CrosscheckRow>& rows) {
  json arr = json::array();
  for (const auto& r : rows) {
    json j;
    j["instance"] = r.instance;
    j["kind"] = r.kind;
    if (r.p) j["p"] = r.p;
    j["closed"] = r.closed;
    j["measured"] = r.measured;
    j["match"] = r.match;
    j["anomaly"] = r.anomaly;
    if (!r.note.empty()) j["note"] = r.note;
    arr.push_back(j);
  }
  return arr;
}

// --- words ------------------------------------------------------------------

std::string words_csv(const AdmissibleCensus& c) {
  std::ostringstream out;
  out << "n,d,family,p,W_p,Wt_p,Ct_p\n";
  for (auto& [p, v] : c.with_period)
    out << c.n << ',' << c.family.d << ',' << family_name(c.family.kind) << ','
        << p << ',' << v << ',' << c.primitive_period.at(p) << ','
        << c.classes.at(p) << '\n';
  out << "# total W=" << c.total << " C=" << c.necklaces
      << " Ct=" << c.primitive_necklaces() << '\n';
  return out.str();
}

json words_json(const AdmissibleCensus& c) {
  json j;
  j["n"] = c.n;
  j["d"] = c.family.d;
  j["family"] = family_name(c.family.kind);
  j["W"] = c.total;
  j["C"] = c.necklaces;
  j["Ct"] = c.primitive_necklaces();
  json per = json::array();
  for (auto& [p, v] : c.with_period) {
    json row;
    row["p"] = p;
    row["W_p"] = v;
    row["Wt_p"] = c.primitive_period.at(p);
    row["Ct_p"] = c.classes.at(p);
    per.push_back(row);
  }
  j["periods"] = per;
  return j;
}

// --- inject -----------------------------------------------------------------

std::string inject_csv(const NecklaceBoundReport& r) {
  std::ostringstream out;
  out << "n,d,p,sources,images,roundtrip,exception\n";
  std::map<std::uint64_t, std::array<std::uint64_t, 2>> per_p;  // count, ok
  std::map<std::uint64_t, std::set<std::uint64_t>> images;
  for (const auto& row : r.rows) {
    per_p[row.p][0] += 1;
    per_p[row.p][1] += row.roundtrip_ok ? 1 : 0;
    images[row.p].insert(row.image_canonical.bits);
  }
  for (auto& [p, counts] : per_p)
    out << r.n << ',' << r.d << ',' << p << ',' << counts[0] << ','
        << images[p].size() << ','
        << (counts[1] == counts[0] ? "ok" : "FAIL") << ','
        << (r.excluded ? 1 : 0) << '\n';
  out << "# family=" << family_name(r.family) << " C=" << r.necklaces
      << " Ct=" << r.primitive_necklaces
      << " inequality=" << (r.inequality_ok ? "holds" : "fails");
  if (r.excluded) out << " excluded=1 reason=" << r.exclusion_reason;
  if (r.construction_ran)
    out << " roundtrip=" << (r.all_roundtrips_ok ? "ok" : "FAIL")
        << " distinct=" << (r.images_pairwise_distinct ? "yes" : "NO");
  out << '\n';
  return out.str();
}

json inject_json(const NecklaceBoundReport& r) {
  json j;
  j["n"] = r.n;
  j["d"] = r.d;
  j["family"] = family_name(r.family);
  j["Delta"] = r.Delta;
  j["K"] = r.K;
  j["C"] = r.necklaces;
  j["Ct"] = r.primitive_necklaces;
  j["inequality"] = r.inequality_ok;
  j["excluded"] = r.excluded;
  if (r.excluded) j["exclusion_reason"] = r.exclusion_reason;
  if (r.construction_ran) {
    j["roundtrip"] = r.all_roundtrips_ok;
    j["images_valid"] = r.all_images_valid;
    j["images_distinct"] = r.images_pairwise_distinct;
  }
  json rows = json::array();
  for (const auto& row : r.rows) {
    json x;
    x["p"] = row.p;
    x["source"] = row.source_canonical.str();
    x["image"] = row.image_canonical.str();
    x["roundtrip"] = row.roundtrip_ok;
    rows.push_back(x);
  }
  j["sources"] = rows;
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"attractor and necklace census tools"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "csv";
  std::string out_path;
  int cap = default_cap();
  app.add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", out_path);
  app.add_option("--cap", cap)->check(CLI::Range(1, kNetworkCap));

  // census
  auto* census = app.add_subcommand("census", "exact attractor census");
  bool no_orbits = false;
  std::string save_net;
  census->add_flag("--no-orbits", no_orbits);
  census->add_option("--save-net", save_net,
                     "also write the network in the text format");
  auto* census_bac = census->add_subcommand("bac", "simple cycle");
  int bac_n = 3;
  std::string bac_sign = "+";
  census_bac->add_option("--n", bac_n)->required();
  census_bac->add_option("--sign", bac_sign);
  auto* census_bad = census->add_subcommand("bad", "double cycle");
  int bad_l = 2, bad_r = 3;
  std::string bad_sl = "-", bad_sr = "-", bad_gate = "or";
  census_bad->add_option("--l", bad_l)->required();
  census_bad->add_option("--r", bad_r)->required();
  census_bad->add_option("--sl", bad_sl);
  census_bad->add_option("--sr", bad_sr);
  census_bad->add_option("--gate", bad_gate);
  auto* census_file = census->add_subcommand("file", "network from a file");
  std::string net_path;
  census_file->add_option("path", net_path)->required();

  // crosscheck
  auto* crosscheck =
      app.add_subcommand("crosscheck", "closed forms against brute force");
  std::string cc_n = "1..8", cc_l = "1..4", cc_r = "1..4", cc_gate = "or";
  bool exceptions_only = false, anomalies_only = false;
  std::string cc_type;
  crosscheck->add_option("type", cc_type)->required()->check(CLI::IsMember(
      {"pos-bac", "neg-bac", "pos-bad", "mixed-bad", "neg-bad"}));
  crosscheck->add_option("--n", cc_n);
  crosscheck->add_option("--l", cc_l);
  crosscheck->add_option("--r", cc_r);
  crosscheck->add_option("--gate", cc_gate);
  crosscheck->add_flag("--exceptions-only", exceptions_only);
  crosscheck->add_flag("--anomalies-only", anomalies_only);

  // words
  auto* words = app.add_subcommand("words", "admissible word census");
  std::string w_family = "neg-bad";
  int w_d = 1, w_n = 5;
  words->add_option("--family", w_family);
  words->add_option("--d", w_d)->required();
  words->add_option("--n", w_n)->required();

  // inject
  auto* inject = app.add_subcommand("inject", "necklace injection verification");
  int i_n = 12, i_d = 4;
  std::string i_family = "neg-bad";
  inject->add_option("--n", i_n)->required();
  inject->add_option("--d", i_d)->required();
  inject->add_option("--family", i_family);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return kExitArgs;
  }

  const Output out{out_path};
  try {
    if (*census) {
      NetworkSpec net;
      std::string instance;
      if (*census_bac) {
        net = make_bac(bac_n, sign_from_string(bac_sign));
        instance = "bac(" + std::to_string(bac_n) + "," + bac_sign + ")";
      } else if (*census_bad) {
        net = make_bad(bad_l, bad_r, sign_from_string(bad_sl),
                       sign_from_string(bad_sr), gate_from_string(bad_gate));
        instance = "bad(" + std::to_string(bad_l) + "," + std::to_string(bad_r) +
                   "," + bad_sl + "," + bad_sr + "," + bad_gate + ")";
      } else if (*census_file) {
        std::ifstream in(net_path);
        if (!in) throw std::invalid_argument("cannot open " + net_path);
        net = parse_network(in);
        instance = "file(" + net_path + ")";
      } else {
        std::cerr << "census: pick one of bac, bad, file\n";
        return kExitArgs;
      }
      if (!save_net.empty()) {
        std::ofstream file(save_net);
        if (!file) throw std::invalid_argument("cannot open " + save_net);
        file << serialize(net);
      }
      return run_census(net, instance, format, !no_orbits, cap, out);
    }

    if (*crosscheck) {
      std::vector<CrosscheckRow> rows;
      bool failed = false;
      Gate gate = gate_from_string(cc_gate);
      if (cc_type == "pos-bac" || cc_type == "neg-bac") {
        auto [lo, hi] = parse_range(cc_n);
        Sign s = cc_type == "pos-bac" ? Sign::Plus : Sign::Minus;
        for (int n = lo; n <= hi; ++n) {
          TypeParams tp = s == Sign::Plus ? TypeParams::pos_bac(n)
                                          : TypeParams::neg_bac(n);
          crosscheck_instance(tp, make_bac(n, s), cap, rows, failed);
        }
      } else {
        auto [llo, lhi] = parse_range(cc_l);
        auto [rlo, rhi] = parse_range(cc_r);
        for (int l = llo; l <= lhi; ++l)
          for (int r = rlo; r <= rhi; ++r) {
            if (l + r - 1 > cap) throw CapExceededError("crosscheck: cap exceeded");
            TypeParams tp = cc_type == "pos-bad" ? TypeParams::pos_bad(l, r)
                            : cc_type == "mixed-bad"
                                ? TypeParams::mixed_bad(l, r)
                                : TypeParams::neg_bad(l, r);
            if (exceptions_only &&
                !(cc_type == "neg-bad" && neg_bad_exception(l, r)))
              continue;
            Sign sl = cc_type == "pos-bad" ? Sign::Plus : Sign::Minus;
            Sign sr = cc_type == "neg-bad" ? Sign::Minus : Sign::Plus;
            crosscheck_instance(tp, make_bad(l, r, sl, sr, gate), cap, rows,
                                failed);
          }
      }
      if (anomalies_only) {
        std::vector<CrosscheckRow> kept;
        for (auto& r : rows)
          if (!r.match) kept.push_back(r);
        rows = std::move(kept);
      }
      out.write(format == "json" ? crosscheck_json(rows).dump(2) + "\n"
                                 : crosscheck_csv(rows));
      return failed ? kExitVerification : kExitOk;
    }

    if (*words) {
      auto census_out =
          enumerate_admissible(w_n, {family_from_name(w_family), w_d}, cap);
      out.write(format == "json" ? words_json(census_out).dump(2) + "\n"
                                 : words_csv(census_out));
      return kExitOk;
    }

    if (*inject) {
      auto report =
          verify_necklace_bound(i_n, family_from_name(i_family), i_d, cap);
      out.write(format == "json" ? inject_json(report).dump(2) + "\n"
                                 : inject_csv(report));
      if (report.excluded) return kExitOk;  // reported, not required
      bool ok = report.inequality_ok &&
                (!report.construction_ran ||
                 (report.all_roundtrips_ok && report.all_images_valid &&
                  report.images_pairwise_distinct));
      return ok ? kExitOk : kExitVerification;
    }
  } catch (const NonMonotoneError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNonMonotone;
  } catch (const CapExceededError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCap;
  } catch (const std::length_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCap;
  } catch (const ExcludedParamsError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitArgs;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitArgs;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitVerification;
  }
  return kExitArgs;
}
