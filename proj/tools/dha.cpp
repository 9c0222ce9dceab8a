// Command-line front end: verification suites, products in the Hall algebra,
// and presentations of glued surfaces.

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dha/hall.hpp"
#include "dha/presentation.hpp"
#include "dha/repq.hpp"
#include "dha/surface.hpp"
#include "json.hpp"

using namespace dha;
using nlohmann::json;

namespace {

constexpr int kPass = 0, kFail = 1, kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  int m = 0;
  std::string h;
  std::string q = "2,3";
  std::string mq = "2";  // multiply evaluates at a single field
  std::string shifts = "-2..3";
  std::string format = "text";
  std::string out;
  int jobs = 1;
  std::string config;
  std::string lhs, rhs, assignment;
};

std::vector<long> parse_q_list(const std::string& text) {
  std::vector<long> qs;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    size_t used = 0;
    long q = 0;
    try {
      q = std::stol(item, &used);
    } catch (const std::exception&) {
      throw UsageError("--q: '" + item + "' is not an integer");
    }
    if (used != item.size()) throw UsageError("--q: '" + item + "' is not an integer");
    if (!is_prime_power(q)) throw UsageError("--q: " + std::to_string(q) + " is not a prime power");
    try {
      FiniteField::make(q);
    } catch (const std::exception& e) {
      throw UsageError(std::string("--q: ") + e.what());
    }
    qs.push_back(q);
  }
  if (qs.empty()) throw UsageError("--q: empty list");
  return qs;
}

ShiftWindow window_of(const Options& o) {
  try {
    return parse_window(o.shifts);
  } catch (const std::exception& e) {
    throw UsageError(std::string("--shifts: ") + e.what());
  }
}

void require_m(int m) {
  if (m < 2) throw UsageError("--m must be at least 2 (the quiver A_{m-1} needs a vertex), got " + std::to_string(m));
}

FoliationData foliation_of(const Options& o) {
  require_m(o.m);
  if (o.h.empty()) throw UsageError("--h is required");
  int entries = 1 + static_cast<int>(std::count(o.h.begin(), o.h.end(), ','));
  if (entries != o.m)
    throw UsageError("--h has " + std::to_string(entries) + " entries but --m is " + std::to_string(o.m));
  FoliationData h = [&] {
    try {
      return parse_foliation(o.h);
    } catch (const std::exception& e) {
      throw UsageError(e.what());
    }
  }();
  return h;
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw UsageError("cannot write " + o.out);
  f << text;
}

// Runs each relation set, then prints the reports in input order.
int run_suites(const Options& o, const std::string& command, const std::vector<RelationSet>& sets,
               const std::vector<long>& qs,
               const std::function<std::string(const Relation&)>& listing = nullptr) {
  std::vector<VerificationReport> reports;
  for (const auto& rs : sets) reports.push_back(verify_relation_set(rs, qs, o.jobs));
  bool ok = true;
  for (const auto& r : reports) ok = ok && r.pass();

  if (o.format == "json") {
    json j;
    j["schema"] = 1;
    j["command"] = command;
    j["q"] = qs;
    j["status"] = ok ? "pass" : "fail";
    j["reports"] = json::array();
    for (size_t k = 0; k < reports.size(); ++k) {
      json r = reports[k].to_json();
      r["relations"] = sets[k].to_json()["relations"];
      j["reports"].push_back(r);
    }
    emit(o, j.dump(2) + "\n");
  } else {
    std::ostringstream os;
    for (size_t k = 0; k < reports.size(); ++k) {
      os << reports[k].to_text();
      if (k == 0 && listing)
        for (const auto& rel : sets[k].relations()) os << "    " << listing(rel) << "\n";
    }
    os << command << ": " << (ok ? "pass" : "FAIL") << "\n";
    emit(o, os.str());
  }
  return ok ? kPass : kFail;
}

int cmd_verify_quiver(const Options& o) {
  require_m(o.m);
  auto qs = parse_q_list(o.q);
  auto w = window_of(o);
  return run_suites(o, "verify-quiver", {quiver_relations(o.m, w)}, qs);
}

int cmd_verify_arcs(const Options& o) {
  require_m(o.m);
  auto qs = parse_q_list(o.q);
  auto w = window_of(o);
  return run_suites(o, "verify-arcs", {s_relations(o.m, w)}, qs);
}

int cmd_verify_disk(const Options& o) {
  FoliationData h = foliation_of(o);
  auto qs = parse_q_list(o.q);
  auto w = window_of(o);
  std::vector<RelationSet> sets{minimal_disk_relations(h, w)};
  for (int i = 1; i <= h.m(); ++i) sets.push_back(cyclic_family(h, i));
  return run_suites(o, "verify-disk", sets, qs);
}

int cmd_verify_skein(const Options& o) {
  auto qs = parse_q_list(o.q);
  auto w = window_of(o);
  FoliationData e0 = standard_form();
  std::vector<RelationSet> sets{local_skein_relations(e0, w.lo, w.hi)};
  for (int m : {4, 5}) sets.push_back(skein_relations(m, w));
  for (int m : {4, 5}) sets.push_back(boundary_skein_relations(m, w));
  // the bracket identity, with the expanded right-hand side
  std::string x = "[E[2,1],E[1," + std::to_string(e0(1)) + "]]_v";
  std::string y = "[E[3," + std::to_string(1 - e0(2)) + "],E[2,0]]_v";
  auto listing = [&](const Relation& r) {
    std::string l = r.label.substr(r.label.find("l=") + 2);
    return r.label + ": [" + x + ", s^" + l + "(" + y + ")] = " + r.rhs.to_string();
  };
  return run_suites(o, "verify-skein", sets, qs, listing);
}

NCPolynomial parse_expr(const std::string& text, const char* what) {
  try {
    return parse_polynomial(text);
  } catch (const std::exception& e) {
    throw UsageError(std::string(what) + ": " + e.what());
  }
}

Generator parse_generator(const std::string& text) {
  NCPolynomial p = parse_expr(text, "assignment key");
  if (p.size() != 1 || p.terms().begin()->first.size() != 1 || p.terms().begin()->second != RationalFunctionV(1))
    throw UsageError("assignment key '" + text + "' is not a single generator");
  return p.terms().begin()->first[0];
}

// {"images": {"E[1,0]": "z[1,0]", ...}, "objects": {"X[1,0]": "M[1,3)[0]"}}
Assignment load_assignment(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read assignment file " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const std::exception& e) {
    throw UsageError("assignment file: " + std::string(e.what()));
  }
  if (!j.is_object()) throw UsageError("assignment file must hold a JSON object");
  std::map<Generator, NCPolynomial> images;
  std::map<Generator, DerivedObject> objects;
  try {
    json im = j.value("images", json::object()), ob = j.value("objects", json::object());
    for (auto& [k, val] : im.items())
      images[parse_generator(k)] = parse_expr(val.get<std::string>(), "assignment image");
    for (auto& [k, val] : ob.items()) objects[parse_generator(k)] = parse_object(val.get<std::string>());
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception& e) {
    throw UsageError("assignment file: " + std::string(e.what()));
  }
  Assignment base = simples_assignment();
  Assignment inner = [objects, base](const Generator& g, HallAlgebra& H) {
    auto it = objects.find(g);
    if (it != objects.end()) return HallElement::basis(H.q(), it->second);
    if (g.fam != 'z') throw UsageError("unassigned generator " + g.to_string());
    return base(g, H);
  };
  GeneratorMap f = [images](const Generator& g) {
    auto it = images.find(g);
    return it != images.end() ? it->second : NCPolynomial::gen(g);
  };
  return composed_assignment(f, inner);
}

int cmd_multiply(const Options& o) {
  int m = o.m == 0 ? 2 : o.m;
  require_m(m);
  auto qs = parse_q_list(o.mq);
  if (qs.size() != 1) throw UsageError("multiply takes a single --q");
  NCPolynomial x = parse_expr(o.lhs, "left factor");
  NCPolynomial y = parse_expr(o.rhs, "right factor");
  Assignment assign = o.assignment.empty() ? simples_assignment() : load_assignment(o.assignment);
  HallAlgebra H(m, qs[0]);
  HallElement r(qs[0]);
  try {
    r = H.evaluate(x * y, assign);
  } catch (const UsageError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  } catch (const std::out_of_range& e) {
    throw UsageError(e.what());
  }
  if (o.format == "json") {
    json j;
    j["schema"] = 1;
    j["command"] = "multiply";
    j["m"] = m;
    j["q"] = qs[0];
    j["lhs"] = x.to_string();
    j["rhs"] = y.to_string();
    j["product"] = r.to_json();
    emit(o, j.dump(2) + "\n");
  } else {
    emit(o, r.to_string() + "\n");
  }
  return kPass;
}

int cmd_presentation(const Options& o) {
  auto w = window_of(o);
  auto qs = parse_q_list(o.q);
  std::ifstream f(o.config);
  if (!f) throw UsageError("cannot read config " + o.config);
  SurfaceConfig c;
  try {
    c = SurfaceConfig::from_json(json::parse(f));
  } catch (const std::exception& e) {
    throw UsageError(std::string("invalid surface config: ") + e.what());
  }
  NaivePresentation np = naive_presentation(c, w);
  for (const auto& warning : np.topology.warnings) std::cerr << "warning: " << warning << "\n";

  bool verified = np.relations.has_assignment();
  VerificationReport rep;
  if (verified) rep = verify_relation_set(np.relations, qs, o.jobs);
  bool ok = !verified || rep.pass();

  if (o.format == "json") {
    json j;
    j["schema"] = 1;
    j["command"] = "presentation";
    j["surface"] = c.to_json();
    j["boundary_components"] = np.topology.boundary_components;
    j["is_disk"] = np.topology.is_disk;
    j["warnings"] = np.topology.warnings;
    j["presentation"] = np.relations.to_json();
    j["verification"] = verified ? rep.to_json() : json(nullptr);
    j["status"] = !verified ? "emitted" : (ok ? "pass" : "fail");
    emit(o, j.dump(2) + "\n");
  } else {
    std::ostringstream os;
    os << "# boundary components: " << np.topology.boundary_components
       << (np.topology.is_disk ? " (disk)" : "") << "\n";
    os << np.relations.to_text();
    if (verified) os << rep.to_text();
    emit(o, os.str());
  }
  return ok ? kPass : kFail;
}

void common_flags(CLI::App* sub, Options& o, std::string& q, bool with_m, bool with_window) {
  if (with_m) sub->add_option("--m", o.m, "number of marked intervals (quiver A_{m-1})");
  sub->add_option("--q", q, "comma-separated field sizes (prime powers)")->capture_default_str();
  if (with_window) sub->add_option("--shifts", o.shifts, "shift window lo..hi")->capture_default_str();
  sub->add_option("--format", o.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  sub->add_option("--out", o.out, "write the report to PATH");
  sub->add_option("--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber)->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact derived Hall algebras of A_{m-1} quivers over finite fields"};
  app.set_help_flag("--help", "print this help");  // -h would collide with --h
  app.require_subcommand(1);
  Options o;

  auto* vq = app.add_subcommand("verify-quiver", "quiver relations of the simples");
  common_flags(vq, o, o.q, true, true);
  vq->get_option("--m")->required();

  auto* va = app.add_subcommand("verify-arcs", "arc relations of the interval objects");
  common_flags(va, o, o.q, true, true);
  va->get_option("--m")->required();

  auto* vd = app.add_subcommand("verify-disk", "minimal-disk presentation and cyclic family");
  common_flags(vd, o, o.q, true, true);
  vd->get_option("--m")->required();
  vd->add_option("--h", o.h, "foliation data, comma separated")->required();

  auto* vs = app.add_subcommand("verify-skein", "local, interleaved and boundary skein relations");
  common_flags(vs, o, o.q, false, true);

  auto* mu = app.add_subcommand("multiply", "product of two expressions in the Hall algebra");
  mu->add_option("lhs", o.lhs, "left factor")->required();
  mu->add_option("rhs", o.rhs, "right factor")->required();
  mu->add_option("--assignment", o.assignment, "JSON file of generator images");
  common_flags(mu, o, o.mq, true, false);

  auto* pr = app.add_subcommand("presentation", "naive presentation of a glued surface");
  pr->add_option("config", o.config, "surface config (JSON)")->required();
  common_flags(pr, o, o.q, false, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  try {
    if (vq->parsed()) return cmd_verify_quiver(o);
    if (va->parsed()) return cmd_verify_arcs(o);
    if (vd->parsed()) return cmd_verify_disk(o);
    if (vs->parsed()) return cmd_verify_skein(o);
    if (mu->parsed()) return cmd_multiply(o);
    if (pr->parsed()) return cmd_presentation(o);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
