#include "serre/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <variant>

#include "serre/a2rep.hpp"
#include "serre/serre.hpp"
#include "serre/zmod.hpp"

namespace serre::cli {
namespace {

struct Options {
  std::string command;
  std::string engine;
  std::optional<unsigned long> p;
  std::string field;
  std::string input;
  std::string suite = "all";
  std::optional<std::uint64_t> seed;
  std::size_t n = 100;
  bool oracle = false;
  std::string format = "json";
  std::string out;
  std::string candidate;  // empty: the engine's own monad
};

using AnyEngine = std::variant<zmod::Engine, a2::Engine>;

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  try {
    return json::parse(text);
  } catch (const json::parse_error& ex) {
    // Translate the byte offset into line:column.
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < std::min<std::size_t>(ex.byte ? ex.byte - 1 : 0, text.size()); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw InputError(path + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + ex.what());
  }
}

Field parse_field(const std::string& s) {
  if (s == "Q" || s == "QQ" || s == "0") return Field::rationals();
  std::string digits = s.rfind("F_", 0) == 0 ? s.substr(2) : s;
  unsigned long p = 0;
  try {
    std::size_t used = 0;
    p = std::stoul(digits, &used);
    if (used != digits.size()) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    throw InputError("field must be Q, a prime, or F_<prime>; got '" + s + "'");
  }
  if (!is_prime(p)) throw InputError("field characteristic " + std::to_string(p) + " is not prime");
  return Field::prime(p);
}

unsigned long check_p(unsigned long p) {
  if (!is_prime(p)) throw InputError("p = " + std::to_string(p) + " is not prime");
  return p;
}

AnyEngine make_engine(const std::string& kind, std::optional<unsigned long> p, const std::string& field) {
  if (kind == "finite_abelian") return zmod::Engine(check_p(p.value_or(2)), zmod::Mode::FiniteAbelian);
  if (kind == "fixture") return zmod::Engine(check_p(p.value_or(2)), zmod::Mode::Fixture);
  if (kind == "a2_rep") return a2::Engine(field.empty() ? Field::prime(101) : parse_field(field));
  throw InputError("unknown engine '" + kind + "' (expected finite_abelian, fixture or a2_rep)");
}

AnyEngine engine_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string())
    throw InputError("engine: expected {\"kind\": \"finite_abelian\"|\"fixture\"|\"a2_rep\", ...}");
  std::optional<unsigned long> p;
  if (j.contains("p")) {
    if (!j.at("p").is_number_unsigned()) throw InputError("engine.p: expected a positive integer");
    p = j.at("p").get<unsigned long>();
  }
  std::string field;
  if (j.contains("field")) {
    const json& f = j.at("field");
    if (f.is_string())
      field = f.get<std::string>();
    else if (f.is_number_unsigned())
      field = std::to_string(f.get<unsigned long>());
    else
      throw InputError("engine.field: expected \"Q\" or a prime");
  }
  return make_engine(j.at("kind").get<std::string>(), p, field);
}

AnyEngine select_engine(const Options& o, const json& input) {
  if (!o.engine.empty()) return make_engine(o.engine, o.p, o.field);
  if (input.contains("engine")) {
    json j = input.at("engine");
    if (o.p) j["p"] = *o.p;
    if (!o.field.empty()) j["field"] = o.field;
    return engine_from_json(j);
  }
  throw InputError("no engine: pass --engine or give an \"engine\" block in the input");
}

// ---------------------------------------------------------------------------
// Session input.

template <class E>
struct Session {
  std::vector<std::pair<std::string, typename E::Object>> objects;
  std::vector<std::pair<std::string, typename E::Morphism>> morphisms;
  std::vector<std::pair<std::string, std::string>> pairs;

  const typename E::Object* find(const std::string& name) const {
    for (const auto& [k, v] : objects)
      if (k == name) return &v;
    return nullptr;
  }
};

template <class E>
Session<E> load_session(const E& e, const json& input) {
  Session<E> s;
  if (!input.is_object()) throw InputError("input: expected a JSON object");
  for (const auto& key : {"objects", "morphisms"})
    if (input.contains(key) && !input.at(key).is_object()) throw InputError(std::string(key) + ": expected an object");

  json raw_objects = input.value("objects", json::object());
  for (auto it = raw_objects.begin(); it != raw_objects.end(); ++it) {
    try {
      s.objects.emplace_back(it.key(), e.object_from_json(it.value()));
    } catch (const std::exception& ex) {
      throw InputError("objects." + it.key() + ": " + ex.what());
    }
  }
  json raw_morphisms = input.value("morphisms", json::object());
  for (auto it = raw_morphisms.begin(); it != raw_morphisms.end(); ++it) {
    const std::string where = "morphisms." + it.key();
    if (s.find(it.key())) throw InputError(where + ": name already used by an object");
    json m = it.value();
    if (!m.is_object()) throw InputError(where + ": expected an object");
    for (const auto& end : {"src", "dst"}) {
      if (!m.contains(end)) throw InputError(where + ": missing \"" + end + "\"");
      if (m.at(end).is_string()) {
        const auto name = m.at(end).template get<std::string>();
        if (!raw_objects.contains(name)) throw InputError(where + "." + end + ": unknown object '" + name + "'");
        m[end] = raw_objects.at(name);
      }
    }
    try {
      auto f = e.morphism_from_json(m);
      if (!e.is_well_defined(f)) throw ContractViolation("matrix does not respect the relations");
      s.morphisms.emplace_back(it.key(), f);
    } catch (const InputError& ex) {
      throw InputError(where + ": " + ex.what());
    } catch (const std::exception& ex) {
      throw InputError(where + ": " + ex.what());
    }
  }
  if (input.contains("pairs")) {
    const json& p = input.at("pairs");
    if (!p.is_array()) throw InputError("pairs: expected an array of [source, target]");
    for (std::size_t i = 0; i < p.size(); ++i) {
      const std::string where = "pairs[" + std::to_string(i) + "]";
      if (!p[i].is_array() || p[i].size() != 2 || !p[i][0].is_string() || !p[i][1].is_string())
        throw InputError(where + ": expected [\"M\", \"N\"]");
      for (int k = 0; k < 2; ++k)
        if (!s.find(p[i][k].get<std::string>()))
          throw InputError(where + ": unknown object '" + p[i][k].get<std::string>() + "'");
      s.pairs.emplace_back(p[i][0].get<std::string>(), p[i][1].get<std::string>());
    }
  }
  return s;
}

// ---------------------------------------------------------------------------
// Engine-specific presentation.

json describe_object(const zmod::Engine& e, const zmod::Module& m) {
  auto inv = e.invariants(m);
  json d = json::array();
  for (const auto& x : inv.divisors) d.push_back(zmod::integer_to_json(x));
  return {{"divisors", d}, {"group", inv.describe()}};
}

json describe_object(const a2::Engine& e, const a2::Rep& v) {
  auto inv = e.invariants(v);
  return {{"dims", {inv[0], inv[1]}}, {"rank", inv[2]}};
}

// W(M) in normal form where the engine has one, with eta adjusted to match.
zmod::Morphism display_unit(const zmod::Engine& e, const zmod::Module& m) {
  auto eta = e.saturate(m);
  return e.compose(e.normalize(eta.target()).to, eta);
}

a2::Morphism display_unit(const a2::Engine& e, const a2::Rep& v) { return e.saturate(v); }

json describe_hom(const GroupInvariants& g) {
  json j = {{"group", g.describe()}};
  if (g.field) {
    j["dimension"] = g.dimension;
  } else {
    json d = json::array();
    for (const auto& x : g.divisors) d.push_back(zmod::integer_to_json(x));
    j["divisors"] = d;
  }
  return j;
}

// ---------------------------------------------------------------------------
// Commands.

struct Outcome {
  json results = json::array();
  json checks = json::array();
  json extra = json::object();
  int exit = 0;
};

template <class E>
Outcome cmd_saturate(const E& e, const Session<E>& s) {
  Outcome o;
  for (const auto& [name, m] : s.objects) {
    auto eta = display_unit(e, m);
    auto h = e.h_C(m).source();
    o.results.push_back({{"name", name},
                         {"object", describe_object(e, m)},
                         {"W", e.object_to_json(eta.target())},
                         {"W_invariants", describe_object(e, eta.target())},
                         {"eta", e.morphism_to_json(eta)},
                         {"H_C", describe_object(e, h)},
                         {"saturated", e.is_saturated(m)}});
  }
  return o;
}

template <class E>
Outcome cmd_qhom(const E& e, const Session<E>& s, bool oracle) {
  constexpr bool has_oracle = requires(const E& x, const typename E::Object& m) { x.enumerate_subobjects(m); };
  if (oracle && !has_oracle) throw InputError("--oracle is only available for the finite_abelian engine");
  if (oracle && e.descriptor().at("kind") != "finite_abelian")
    throw InputError("--oracle is only available for the finite_abelian engine");

  std::vector<std::pair<std::string, std::string>> pairs = s.pairs;
  if (pairs.empty())
    for (const auto& a : s.objects)
      for (const auto& b : s.objects) pairs.emplace_back(a.first, b.first);

  Outcome o;
  std::size_t disagreements = 0, compared = 0;
  json first_witness;
  for (const auto& [a, b] : pairs) {
    const auto& m = *s.find(a);
    const auto& n = *s.find(b);
    json r = {{"source", a}, {"target", b}, {"hom", describe_hom(q_hom(e, m, n).carrier())}};
    if constexpr (has_oracle) {
      if (oracle && !e.is_finite(m)) {
        r["oracle"] = "skipped: source is infinite";
      } else if (oracle) {
        ++compared;
        auto cmp = compare_quotient_homs(e, m, n);
        r["oracle"] = describe_hom(cmp.via_colimit);
        r["agree"] = cmp.agree();
        if (!cmp.agree() && disagreements++ == 0)
          first_witness = {{"source", e.object_to_json(m)}, {"target", e.object_to_json(n)}};
      }
    }
    o.results.push_back(r);
  }
  if (oracle) {
    json c = {{"suite", "qhom"}, {"axiom", "qhom.oracle_agreement"}, {"pass", disagreements == 0},
              {"samples", compared}, {"failures", disagreements}, {"notes", json::object()}};
    if (disagreements) c["witness"] = first_witness;
    o.checks.push_back(c);
    o.exit = disagreements ? 1 : 0;
  }
  return o;
}

template <class E>
Outcome cmd_check(const E& e, const Session<E>& s, const Options& opt, std::uint64_t seed) {
  std::vector<std::string> suites;
  if (opt.suite == "all") {
    suites = all_suites();
  } else {
    bool known = opt.suite == "exactness";
    for (const auto& x : all_suites()) known = known || x == opt.suite;
    if (!known)
      throw InputError("unknown suite '" + opt.suite +
                       "' (expected monad-laws, idempotent, zigzag, saturating, gabriel-equiv, ker-q, exactness or all)");
    suites = {opt.suite};
  }
  std::vector<typename E::Object> extra;
  for (const auto& [name, m] : s.objects) extra.push_back(m);

  // The fixture has no Gabriel monad; its natural candidate is M -> M / H_C(M).
  std::string cand = opt.candidate;
  if (cand.empty()) cand = e.descriptor().at("kind") == "fixture" ? "quotient" : "gabriel";
  const Candidate<E> c = make_candidate(e, cand);
  const SampleSet<E> samples = draw_samples(e, seed, opt.n, extra);
  Outcome o;
  for (const auto& suite : suites) {
    AxiomReport r = suite == "gabriel-equiv" ? check_gabriel_equivalence(e, c, seed, opt.n, &samples)
                                             : run_suite(e, c, suite, seed, opt.n, samples);
    o.results.push_back({{"suite", suite}, {"pass", r.pass()}});
    for (const auto& ch : r.checks) o.checks.push_back(ch.to_json());
    if (!r.pass()) o.exit = 1;
  }
  o.extra["candidate"] = c.name;
  o.extra["sample_counts"] = {{"objects", samples.objects.size()},
                              {"morphisms", samples.morphisms.size()},
                              {"ses", samples.ses.size()},
                              {"c_objects", samples.c_objects.size()},
                              {"saturated_objects", samples.saturated.size()}};
  return o;
}

// A report (first failing check) or a bare witness.
std::optional<json> extract_witness(const json& doc) {
  if (!doc.is_object()) throw InputError("replay: expected a JSON object");
  if (doc.contains("axiom") && doc.contains("sample")) return doc;
  if (!doc.contains("checks")) throw InputError("replay: file is neither a report nor a witness");
  const json& checks = doc.at("checks");
  if (!checks.is_array()) throw InputError("replay: \"checks\" must be an array");
  for (const auto& c : checks)
    if (c.is_object() && !c.value("pass", true) && c.contains("witness") && c.at("witness").contains("sample"))
      return c.at("witness");
  return std::nullopt;
}

template <class E>
Outcome cmd_replay(const E& e, const json& witness, std::ostream& err) {
  Outcome o;
  const std::string version = witness.value("version", std::string("unknown"));
  const bool mismatch = version != kVersion;
  if (mismatch) err << "warning: witness written by version " << version << ", replaying with " << kVersion << "\n";
  std::optional<json> detail;
  try {
    detail = replay_witness(e, witness);
  } catch (const nlohmann::json::exception& ex) {
    throw InputError(std::string("replay: malformed witness: ") + ex.what());
  }
  const bool reproduced = detail.has_value();
  json r = {{"axiom", witness.at("axiom")}, {"reproduced", reproduced}, {"version_mismatch", mismatch},
            {"witness_version", version}};
  if (detail) r["detail"] = *detail;
  o.results.push_back(r);
  json c = {{"suite", witness.value("suite", std::string())}, {"axiom", witness.at("axiom")},
            {"pass", !reproduced}, {"samples", 1}, {"failures", reproduced ? 1 : 0}, {"notes", json::object()}};
  if (reproduced) c["witness"] = witness;
  o.checks.push_back(c);
  o.exit = reproduced ? 1 : 0;
  return o;
}

// ---------------------------------------------------------------------------

std::string render_text(const json& report) {
  std::ostringstream s;
  s << report.at("command").get<std::string>() << " on " << report.at("engine").dump() << " (seed "
    << report.at("seed") << ", n " << report.at("n") << ")\n";
  for (const auto& r : report.at("results")) s << "  " << r.dump() << "\n";
  for (const auto& c : report.at("checks")) {
    s << "  " << (c.at("pass").get<bool>() ? "PASS " : "FAIL ") << c.at("axiom").get<std::string>() << " ("
      << c.at("samples") << " samples, " << c.at("failures") << " failures)\n";
    if (c.contains("witness") && c.at("witness").contains("sample"))
      s << "       witness: " << c.at("witness").at("sample").dump() << "\n";
  }
  if (report.contains("message")) s << "  " << report.at("message").get<std::string>() << "\n";
  s << "exit " << report.at("exit") << "\n";
  return s.str();
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("SERRE_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw InputError(std::string("SERRE_SEED is not an unsigned integer: '") + env + "'");
    }
  }
  return 0;
}

json execute(const Options& opt, std::ostream& err) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::uint64_t seed = opt.seed ? *opt.seed : default_seed();

  json input = json::object();
  if (!opt.input.empty()) {
    input = read_json_file(opt.input);
  } else if (opt.command != "check") {
    throw InputError("--input is required for " + opt.command);
  }

  json report = {{"command", opt.command}, {"seed", seed}, {"n", opt.n}, {"version", kVersion}};
  std::optional<json> witness;
  AnyEngine engine = [&]() -> AnyEngine {
    if (opt.command != "replay") return select_engine(opt, input);
    witness = extract_witness(input);
    if (!witness) return zmod::Engine(2);
    if (!opt.engine.empty()) return make_engine(opt.engine, opt.p, opt.field);
    if (!witness->contains("engine")) throw InputError("replay: witness has no engine descriptor");
    return engine_from_json(witness->at("engine"));
  }();

  Outcome o;
  if (opt.command == "replay" && !witness) {
    report["engine"] = input.value("engine", json(nullptr));
    report["message"] = "nothing to replay";
  } else {
    std::visit(
        [&](const auto& e) {
          report["engine"] = e.descriptor();
          if (opt.command == "replay") {
            o = cmd_replay(e, *witness, err);
            return;
          }
          const auto session = load_session(e, input);
          if (opt.command == "saturate")
            o = cmd_saturate(e, session);
          else if (opt.command == "qhom")
            o = cmd_qhom(e, session, opt.oracle);
          else
            o = cmd_check(e, session, opt, seed);
        },
        engine);
  }
  report["results"] = o.results;
  report["checks"] = o.checks;
  report["exit"] = o.exit;
  for (auto it = o.extra.begin(); it != o.extra.end(); ++it) report[it.key()] = it.value();
  const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  report["timings"] = {{"total_ms", ms}};
  return report;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Serre quotients and Gabriel monads in exact arithmetic", "serre"};
  app.require_subcommand(1, 1);
  Options opt;

  auto common = [&](CLI::App* sub, bool engine_opts) {
    sub->add_option("--input", opt.input, "session JSON file");
    if (engine_opts) {
      sub->add_option("--engine", opt.engine, "finite_abelian | a2_rep | fixture")
          ->check(CLI::IsMember({"finite_abelian", "a2_rep", "fixture"}));
      sub->add_option("--p", opt.p, "prime for the Z engines");
      sub->add_option("--field", opt.field, "Q or a prime, for a2_rep");
    }
    sub->add_option("--seed", opt.seed, "sampling seed (default $SERRE_SEED or 0)");
    sub->add_option("--n", opt.n, "random samples per kind");
    sub->add_option("--format", opt.format, "json | text")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--out", opt.out, "also write the JSON report here");
  };
  auto* sat = app.add_subcommand("saturate", "W(M), eta_M and H_C(M) for every input object");
  common(sat, true);
  auto* qh = app.add_subcommand("qhom", "quotient Hom groups");
  common(qh, true);
  qh->add_flag("--oracle", opt.oracle, "cross-check against the direct-limit definition");
  auto* chk = app.add_subcommand("check", "run checker suites");
  common(chk, true);
  chk->add_option("suite,--suite", opt.suite, "suite name or all");
  chk->add_option("--candidate", opt.candidate, "gabriel | quotient | identity | twisted (default: gabriel, quotient on fixture)")
      ->check(CLI::IsMember({"gabriel", "quotient", "identity", "twisted"}));
  auto* rep = app.add_subcommand("replay", "re-run the failing check stored in a report or witness");
  common(rep, true);
  rep->add_option("file", opt.input, "report or witness file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& ex) {
    const int code = app.exit(ex, out, err);
    return code == 0 ? 0 : 2;
  }
  opt.command = app.get_subcommands().front()->get_name();

  json report;
  try {
    report = execute(opt, err);
  } catch (const InputError& ex) {
    err << "error: " << ex.what() << "\n";
    report = {{"command", opt.command}, {"error", ex.what()}, {"exit", 2}};
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    report = {{"command", opt.command}, {"error", ex.what()}, {"exit", 2}};
  }
  const int code = report.at("exit").get<int>();

  if (!opt.out.empty()) {
    std::ofstream f(opt.out);
    if (!f) {
      err << "error: cannot write '" << opt.out << "'\n";
      return 2;
    }
    f << report.dump(2) << "\n";
  }
  if (report.contains("error")) return code;
  if (opt.format == "text")
    out << render_text(report);
  else
    out << report.dump(2) << "\n";
  return code;
}

}  // namespace serre::cli
