#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include <nlohmann/json.hpp>
#include "quadinv/classify.hpp"
#include "quadinv/covering.hpp"
#include "quadinv/error.hpp"
#include "quadinv/exponents.hpp"
#include "quadinv/fixtures.hpp"
#include "quadinv/invariants.hpp"
#include "quadinv/tables.hpp"
#include "suite.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace quadinv;

namespace {

// Exit codes.
constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kInconclusive = 2;
constexpr int kCheckFailed = 3;

struct InputError : Error {
  using Error::Error;
};

struct Config {
  std::string command;
  std::string input;
  std::optional<int> k;
  std::optional<int> m;
  std::string p;
  std::optional<int> budget;
  std::uint64_t seed = 1;
  std::optional<long> samples;
  std::optional<double> tol;
  std::string format;
  std::string out;
  // exponents
  std::string family;
  std::optional<int> d;
  std::optional<int> d_max;
  std::string dec;
  bool plot = false;
  // cover
  std::string poly;
  std::string with;
  double K = 1000;
  int Ap = 2;
  std::string svg;
  std::string audit;
  // verify-all
  std::vector<int> only;
};

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InputError("cannot read " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw InputError("cannot write " + path);
  f << text;
}

// A file, a shipped fixture name (with or without extension), or inline "d=...; ..." text.
QuadTuple load_tuple(const std::string& in) {
  if (in.empty()) throw InputError("--input is required");
  if (fs::is_regular_file(in)) return parse_tuple(read_file(in));
  std::string stem = fs::path(in).stem().string();
  if (fixtures::has_tuple(in)) return fixtures::tuple(in);
  if (fixtures::has_tuple(stem)) return fixtures::tuple(stem);
  if (in.find("d=") != std::string::npos) return parse_tuple(in);
  throw InputError("not a file, fixture or tuple: " + in);
}

// "d=<int>; <polynomial>"
Poly parse_poly_text(const std::string& text) {
  std::string t;
  for (const std::string& line : [&] {
         std::vector<std::string> lines;
         std::istringstream is(text);
         for (std::string l; std::getline(is, l);) lines.push_back(l.substr(0, l.find('#')));
         return lines;
       }())
    t += line + " ";
  auto semi = t.find(';');
  auto eq = t.find("d=");
  if (semi == std::string::npos || eq == std::string::npos || eq > semi)
    throw InputError("polynomial text needs the form 'd=<int>; <polynomial>'");
  int d = 0;
  try {
    d = std::stoi(t.substr(eq + 2, semi - eq - 2));
  } catch (const std::exception&) {
    throw InputError("bad dimension header in: " + text);
  }
  if (d < 1) throw InputError("dimension must be positive");
  return parse_poly(t.substr(semi + 1), d);
}

Poly load_poly(const std::string& in) {
  if (in.empty()) throw InputError("--poly is required");
  if (fs::is_regular_file(in)) return parse_poly_text(read_file(in));
  std::string stem = fs::path(in).stem().string();
  if (fixtures::has_poly(in)) return fixtures::poly(in);
  if (fs::path(in).extension() == ".poly" && fixtures::has_poly(stem)) return fixtures::poly(stem);
  if (in.find("d=") != std::string::npos) return parse_poly_text(in);
  throw InputError("not a file, fixture or polynomial: " + in);
}

std::string timestamp() {
  std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json config_json(const Config& c) {
  json j;
  j["command"] = c.command;
  if (!c.input.empty()) j["input"] = c.input;
  if (!c.poly.empty()) j["poly"] = c.poly;
  if (!c.with.empty()) j["with"] = c.with;
  if (c.k) j["k"] = *c.k;
  if (c.m) j["m"] = *c.m;
  if (!c.p.empty()) j["p"] = c.p;
  if (c.budget) j["budget"] = *c.budget;
  j["seed"] = c.seed;
  if (c.samples) j["samples"] = *c.samples;
  if (c.tol) j["tol"] = *c.tol;
  if (!c.family.empty()) j["family"] = c.family;
  if (c.d) j["d"] = *c.d;
  if (c.d_max) j["d_max"] = *c.d_max;
  if (!c.dec.empty()) j["dec"] = c.dec;
  if (c.command == "cover") {
    j["K"] = c.K;
    j["Ap"] = c.Ap;
  }
  return j;
}

// JSON artifact: configuration and result, then a timestamp that comparisons ignore.
std::string envelope(const Config& c, json result) {
  json j;
  j["tool"] = "quadinv";
  j["version"] = QUADINV_VERSION;
  j["config"] = config_json(c);
  j["result"] = std::move(result);
  j["timestamp"] = timestamp();
  return j.dump(2) + "\n";
}

std::string csv_header(const Config& c) { return "# quadinv " + c.command + " seed=" + std::to_string(c.seed) + "\n"; }

bool want_json(const Config& c, const std::string& fallback) {
  std::string f = c.format.empty() ? fallback : c.format;
  if (f != "csv" && f != "json") throw InputError("--format must be csv or json");
  return f == "json";
}

SliceOptions slice_options(const Config& c) {
  SliceOptions o;
  if (c.budget) o.budget = *c.budget;
  if (c.samples) o.dim.samples = static_cast<int>(*c.samples);
  if (c.tol) o.dim.tol = *c.tol;
  return o;
}

int run_d_table(const Config& c) {
  QuadTuple t = load_tuple(c.input);
  RankSearchOptions o;
  if (c.budget) o.multistarts = *c.budget;
  DTable tab = d_table(t, o, c.seed);
  if (want_json(c, "csv"))
    write_text(c.out, envelope(c, json::parse(to_json(tab))));
  else
    write_text(c.out, csv_header(c) + to_csv(tab));
  return any_inconclusive(tab) ? kInconclusive : kOk;
}

std::vector<XTable> compute_x(const Config& c, const QuadTuple& t) {
  std::vector<int> ks;
  if (c.k)
    ks.push_back(*c.k);
  else
    for (int k = 2; k <= t.d + 1; ++k) ks.push_back(k);
  if (!c.m) return x_tables(t, ks, slice_options(c), c.seed);
  std::vector<XTable> out;
  for (int k : ks) out.push_back(XTable{t, k, {{*c.m, x_invariant(t, k, *c.m, slice_options(c), c.seed)}}});
  return out;
}

int run_x_table(const Config& c) {
  QuadTuple t = load_tuple(c.input);
  std::vector<XTable> tabs = compute_x(c, t);
  bool inconclusive = false;
  for (const auto& tab : tabs) inconclusive = inconclusive || any_inconclusive(tab);
  if (want_json(c, "csv")) {
    json arr = json::array();
    for (const auto& tab : tabs) arr.push_back(json::parse(to_json(tab)));
    write_text(c.out, envelope(c, arr));
  } else {
    std::string text = csv_header(c);
    for (std::size_t i = 0; i < tabs.size(); ++i) {
      std::string part = to_csv(tabs[i]);
      text += i == 0 ? part : part.substr(part.find('\n') + 1);
    }
    write_text(c.out, text);
  }
  return inconclusive ? kInconclusive : kOk;
}

int run_exponents(const Config& c) {
  if (!c.input.empty()) {
    // verify the two exponent conditions against a computed X table
    if (!c.k || c.p.empty()) throw InputError("verification needs --input, --k and --p");
    QuadTuple t = load_tuple(c.input);
    Rational p = parse_rational(c.p);
    std::string dec = c.dec.empty() ? (t.n() == 2 ? "codim2" : "paraboloid") : c.dec;
    DecSliceFn fn;
    if (dec == "paraboloid")
      fn = dec_exp_paraboloid_slice;
    else if (dec == "codim2")
      fn = dec_exp_codim2_slice;
    else
      throw InputError("--dec must be paraboloid or codim2");
    Config cx = c;
    cx.m.reset();
    XTable tab = compute_x(cx, t).at(0);
    VerifyReport r = verify_exponent_conditions(fn, tab, t.d, t.n(), *c.k, p);
    if (want_json(c, "json")) {
      json j;
      j["dec_formula"] = dec;
      j["ok"] = r.ok;
      j["dec_ok"] = r.dec_ok;
      j["dec"] = to_string(r.dec);
      j["dec_bound"] = to_string(r.dec_bound);
      j["violating_m"] = r.violating_m;
      j["x_table"] = json::parse(to_json(tab));
      write_text(c.out, envelope(c, j));
    } else {
      std::ostringstream os;
      os << csv_header(c) << "m,X,two_m_over_p,ok\n";
      for (const auto& [m, e] : tab.entries) {
        Rational lhs = Rational(2 * m) / p;
        os << m << "," << e.value << "," << to_string(lhs) << "," << (lhs <= e.value ? "true" : "false") << "\n";
      }
      os << "dec," << to_string(r.dec) << "," << to_string(r.dec_bound) << "," << (r.dec_ok ? "true" : "false")
         << "\n";
      write_text(c.out, os.str());
    }
    if (any_inconclusive(tab)) return kInconclusive;
    return r.ok ? kOk : kCheckFailed;
  }
  if (!c.d) throw InputError("--d is required (or --input with --k and --p)");
  int d_min = *c.d, d_max = c.d_max.value_or(*c.d);
  if (d_max < d_min) throw InputError("--d-max must be at least --d");
  if (c.plot) {
    write_text(c.out, csv_header(c) + plot_data_csv(d_min, d_max));
    return kOk;
  }
  std::string family = c.family.empty() ? "paraboloid" : c.family;
  if (want_json(c, "csv"))
    write_text(c.out, envelope(c, json::parse(critical_table_json(family, d_min, d_max))));
  else
    write_text(c.out, csv_header(c) + critical_table_csv(family, d_min, d_max));
  return kOk;
}

int run_classify(const Config& c) {
  QuadTuple t = load_tuple(c.input);
  json j;
  j["d"] = t.d;
  j["n"] = t.n();
  j["nv"] = nv(t);
  // diagonal codimension-two tuples carry a good-manifold spec
  std::optional<GoodManifoldSpec> spec;
  if (t.n() == 2) {
    GoodManifoldSpec s;
    bool diagonal = true;
    for (int i = 0; i < t.d && diagonal; ++i) {
      for (int l = 0; l < t.d; ++l)
        if (l != i && (t.forms[0].matrix()(i, l) != 0 || t.forms[1].matrix()(i, l) != 0)) diagonal = false;
      s.a.push_back(t.forms[0].matrix()(i, i));
      s.b.push_back(t.forms[1].matrix()(i, i));
    }
    if (diagonal) spec = s;
  }
  j["diagonal_codim2"] = spec.has_value();
  if (spec) {
    j["good"] = is_good(*spec);
    WeakConditionResult w = good_weak_condition(*spec);
    j["weak_condition"] = w.holds;
    if (w.witness) {
      json wit = json::array();
      for (const auto& v : *w.witness) wit.push_back(to_string(v));
      j["weak_condition_witness"] = wit;
    }
  } else {
    j["good"] = nullptr;
    j["weak_condition"] = nullptr;
  }
  if (t.n() == 2) {
    WellCurvedResult w = well_curved_analysis(t.forms[0], t.forms[1]);
    j["well_curved"] = w.value;
    j["pencil_determinant_zero"] = w.f_zero;
    j["max_linear_factor_multiplicity"] = w.max_multiplicity;
    json bf = json::array();
    for (const auto& v : w.binary_form) bf.push_back(to_string(v));
    j["binary_form"] = bf;
  } else {
    j["well_curved"] = nullptr;
  }
  if (want_json(c, "json")) {
    write_text(c.out, envelope(c, j));
  } else {
    std::ostringstream os;
    os << csv_header(c) << "property,value\n";
    for (const auto& [key, v] : j.items()) os << key << "," << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    write_text(c.out, os.str());
  }
  return kOk;
}

int run_cover(const Config& c) {
  Poly p = load_poly(c.poly);
  long samples = c.samples.value_or(100000);
  if (samples < 1) throw InputError("--samples must be positive");
  if (!want_json(c, "json")) throw InputError("cover writes JSON only");
  if (!c.with.empty()) {
    RecursionReport r = cover_intersection(p, load_poly(c.with), c.K, c.Ap, samples, c.seed);
    write_text(c.out, envelope(c, json::parse(to_json(r))));
    return kOk;
  }
  CoveringReport r = cover_sublevel(p, c.K, c.Ap, samples, c.seed);
  write_text(c.out, envelope(c, json::parse(to_json(r))));
  if (!c.svg.empty()) write_text(c.svg, to_svg(r));
  if (!c.audit.empty()) write_text(c.audit, audit_csv(r));
  return kOk;
}

int run_verify_all(const Config& c) {
  suite::Options o;
  o.seed = c.seed;
  if (c.samples) o.cover_samples = *c.samples;
  o.only = c.only;
  std::vector<suite::Check> checks = suite::run(o);
  bool fail = false, inconclusive = false;
  for (const auto& ch : checks) {
    std::cerr << suite::line(ch) << "\n";
    fail = fail || !ch.pass;
    inconclusive = inconclusive || ch.inconclusive;
  }
  if (want_json(c, "json")) {
    json arr = json::array();
    for (const auto& ch : checks)
      arr.push_back({{"id", ch.id},
                     {"name", ch.name},
                     {"pass", ch.pass},
                     {"inconclusive", ch.inconclusive},
                     {"limit_seconds", ch.limit_seconds},
                     {"detail", ch.detail}});
    write_text(c.out, envelope(c, arr));
  } else {
    std::ostringstream os;
    os << csv_header(c) << "id,name,pass,inconclusive,seconds,limit_seconds\n";
    for (const auto& ch : checks)
      os << ch.id << "," << ch.name << "," << (ch.pass ? "true" : "false") << ","
         << (ch.inconclusive ? "true" : "false") << "," << ch.seconds << "," << ch.limit_seconds << "\n";
    write_text(c.out, os.str());
  }
  if (inconclusive) return kInconclusive;
  return fail ? kCheckFailed : kOk;
}

std::string env(const std::string& flag) {
  std::string e = "QUADINV_";
  for (char ch : flag) e += ch == '-' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  return e;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Invariants, restriction exponents and sublevel-set coverings for quadratic manifolds"};
  app.require_subcommand(1);
  Config cfg;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--seed", cfg.seed, "Random seed, recorded in every artifact (default 1)")->envname(env("seed"));
    sub->add_option("--format", cfg.format, "csv or json")->envname(env("format"));
    sub->add_option("--out", cfg.out, "Output path (default stdout)")->envname(env("out"));
  };
  auto tuple_input = [&](CLI::App* sub) {
    sub->add_option("--input", cfg.input, "Tuple file, fixture name, or inline 'd=2; x1^2 + x2^2'")
        ->envname(env("input"));
  };
  auto search = [&](CLI::App* sub) {
    sub->add_option("--budget", cfg.budget, "Search effort: random starts (d-table, default 64) or eta samples "
                                            "(x-table, default 16)")
        ->envname(env("budget"));
    sub->add_option("--samples", cfg.samples, "Sample points per fibre dimension estimate (default 24)")
        ->envname(env("samples"));
    sub->add_option("--tol", cfg.tol, "Numerical zero tolerance (default 1e-8)")->envname(env("tol"));
  };

  CLI::App* dt = app.add_subcommand("d-table", "Minimal number of variables for every (d', n')");
  tuple_input(dt);
  search(dt);
  common(dt);

  CLI::App* xt = app.add_subcommand("x-table", "Projection thresholds X(k, m)");
  tuple_input(xt);
  xt->add_option("--k", cfg.k, "Linearity k (default: every k from 2 to d+1)")->envname(env("k"));
  xt->add_option("--m", cfg.m, "Single subspace dimension m")->envname(env("m"));
  search(xt);
  common(xt);

  CLI::App* ex = app.add_subcommand("exponents", "Critical exponents, or verification of the exponent conditions");
  ex->add_option("--family", cfg.family, "paraboloid, good or maxcodim (default paraboloid)")->envname(env("family"));
  ex->add_option("--d", cfg.d, "Dimension, or first dimension of a range")->envname(env("d"));
  ex->add_option("--d-max", cfg.d_max, "Last dimension of the range")->envname(env("d-max"));
  ex->add_flag("--plot", cfg.plot, "Write plot data for the critical exponent curves");
  tuple_input(ex);
  ex->add_option("--k", cfg.k, "Linearity k for verification")->envname(env("k"));
  ex->add_option("--p", cfg.p, "Exponent p as a rational, e.g. 601/100")->envname(env("p"));
  ex->add_option("--dec", cfg.dec, "Slice formula: paraboloid or codim2 (default codim2 when n = 2)")
      ->envname(env("dec"));
  search(ex);
  common(ex);

  CLI::App* cl = app.add_subcommand("classify", "Good, weak-condition and well-curved tests");
  tuple_input(cl);
  common(cl);

  CLI::App* cv = app.add_subcommand("cover", "Cover a sublevel set by neighborhoods of regular graphs");
  cv->add_option("--poly", cfg.poly, "Polynomial file, fixture name, or inline 'd=2; x1^2 + x2^2 - 1/4'")
      ->envname(env("poly"));
  cv->add_option("--with", cfg.with, "Second polynomial: cover the common zero set by one recursion step")
      ->envname(env("with"));
  cv->add_option("--K", cfg.K, "Scale K (default 1000)")->envname(env("scale"));
  cv->add_option("--Ap", cfg.Ap, "Neighborhood exponent (default 2)")->envname(env("Ap"));
  cv->add_option("--samples", cfg.samples, "Verification samples (default 100000)")->envname(env("samples"));
  cv->add_option("--svg", cfg.svg, "SVG picture path (d = 2)")->envname(env("svg"));
  cv->add_option("--audit", cfg.audit, "Audit CSV path")->envname(env("audit"));
  common(cv);

  CLI::App* va = app.add_subcommand("verify-all", "Run every acceptance check");
  va->add_option("--samples", cfg.samples, "Covering samples (default 100000)")->envname(env("samples"));
  va->add_option("--only", cfg.only, "Criterion ids to run")->envname(env("only"));
  common(va);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kInputError;
  }

  try {
    for (CLI::App* sub : app.get_subcommands()) {
      cfg.command = sub->get_name();
      if (sub == dt) return run_d_table(cfg);
      if (sub == xt) return run_x_table(cfg);
      if (sub == ex) return run_exponents(cfg);
      if (sub == cl) return run_classify(cfg);
      if (sub == cv) return run_cover(cfg);
      if (sub == va) return run_verify_all(cfg);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
