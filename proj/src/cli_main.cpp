// Command-line front end: parses monoid spec files, dispatches engine
// queries, and emits machine-readable results.  Exit status: 0 on success,
// 2 when any emitted result is truncated or inconclusive, 3 when a claim
// check fails outright, 1 on input errors.

#include "puiseux/families.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

using nlohmann::json;
using nlohmann::ordered_json;
using namespace puiseux;

namespace {

// ---- JSON spec parsing ----

Int parse_int_json(const json& v, const char* field) {
  if (v.is_string()) return Int(v.get<std::string>());
  if (v.is_number_integer()) return Int(v.get<long long>());
  throw std::invalid_argument(std::string("spec field '") + field +
                              "': expected an integer, got " + v.dump());
}

Rational parse_rat_json(const json& v, const char* field) {
  if (v.is_string()) return Rational::parse(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long long>());
  throw std::invalid_argument(std::string("spec field '") + field +
                              "': expected a rational string \"p/q\", got " + v.dump());
}

RealCut parse_cut_json(const json& v, const char* field) {
  if (v.is_object()) {
    Rational a = v.contains("a") ? parse_rat_json(v.at("a"), field) : Rational(0);
    Rational b = v.contains("b") ? parse_rat_json(v.at("b"), field) : Rational(0);
    Int c = v.contains("c") ? parse_int_json(v.at("c"), field) : Int(0);
    return RealCut::quad(a, b, c);
  }
  if (v.is_string()) return RealCut::parse(v.get<std::string>());
  if (v.is_number_integer()) return RealCut(v.get<long long>());
  throw std::invalid_argument(std::string("spec field '") + field +
                              "': expected \"p/q\", \"a+b*sqrt(c)\", or {a,b,c}, got " + v.dump());
}

SequenceRule parse_rule_json(const json& v, const char* field, bool cut_side) {
  if (!v.is_object() || !v.contains("kind"))
    throw std::invalid_argument(std::string("spec field '") + field +
                                "': expected a rule object with \"kind\"");
  std::string kind = v.at("kind").get<std::string>();
  if (kind == "explicit") {
    const json& vals = v.at("values");
    if (!vals.is_array())
      throw std::invalid_argument(std::string("spec field '") + field +
                                  "': \"values\" must be an array");
    if (cut_side) {
      std::vector<RealCut> cuts;
      for (const json& x : vals) cuts.push_back(parse_cut_json(x, field));
      return SequenceRule::explicit_cuts(std::move(cuts));
    }
    std::vector<Int> ints;
    for (const json& x : vals) ints.push_back(parse_int_json(x, field));
    return SequenceRule::explicit_ints(std::move(ints));
  }
  if (kind == "thm312") return SequenceRule::thm312();
  if (kind == "pow2") return SequenceRule::pow2();
  if (kind == "prop39") {
    std::vector<Int> seed;
    for (const json& x : v.at("seed")) seed.push_back(parse_int_json(x, field));
    return SequenceRule::prop39(std::move(seed));
  }
  throw std::invalid_argument(std::string("spec field '") + field +
                              "': unknown rule kind \"" + kind + "\"");
}

MonoidSpec parse_spec_json(const json& j) {
  if (!j.is_object() || !j.contains("type"))
    throw std::invalid_argument("spec: top-level object with a \"type\" field required");
  std::string type = j.at("type").get<std::string>();
  if (type == "finitely_generated") {
    std::vector<Rational> gens;
    for (const json& g : j.at("generators")) gens.push_back(parse_rat_json(g, "generators"));
    return FinitelyGenerated{std::move(gens)};
  }
  if (type == "lattice_union")
    return LatticeUnion{parse_rule_json(j.at("alphas"), "alphas", true),
                        parse_rule_json(j.at("bs"), "bs", false)};
  if (type == "irrational_threshold")
    return IrrationalThreshold{parse_cut_json(j.at("alpha"), "alpha")};
  if (type == "dense_threshold")
    return DenseThreshold{parse_cut_json(j.at("sigma"), "sigma"), j.value("strict", true)};
  if (type == "prime_reciprocal") {
    PrimeReciprocal pr;
    if (j.contains("prime_bound") && !j.at("prime_bound").is_null())
      pr.prime_bound = parse_int_json(j.at("prime_bound"), "prime_bound");
    return pr;
  }
  if (type == "geometric") return GeometricPowers{parse_rat_json(j.at("ratio"), "ratio")};
  throw std::invalid_argument("spec: unknown type \"" + type + "\"");
}

Monoid load_monoid(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open spec file: " + path);
  json j = json::parse(in);  // throws with a byte-position diagnostic
  return Monoid(parse_spec_json(j));
}

// ---- serializers ----

ordered_json j_int(const Int& n) {
  std::string s = n.str();
  if (s.size() <= 15) return ordered_json(std::stoll(s));
  return ordered_json(s);  // too wide for a safe JSON number
}

ordered_json j_ints(const std::vector<Int>& xs) {
  ordered_json arr = ordered_json::array();
  for (const Int& x : xs) arr.push_back(j_int(x));
  return arr;
}

ordered_json j_infinite(bool certified) {
  ordered_json j;
  j["infinite"] = true;
  j["certified"] = certified;
  return j;
}

ordered_json j_factorization(const Factorization& z) {
  ordered_json arr = ordered_json::array();
  for (const auto& [atom, mult] : z.terms) {
    ordered_json t;
    t["atom"] = atom.str();
    t["mult"] = j_int(mult);
    arr.push_back(std::move(t));
  }
  return arr;
}

ordered_json j_budget(const SearchBudget& b) {
  ordered_json j;
  j["value_cap"] = b.value_cap.str();
  j["denom_cap"] = j_int(b.denom_cap);
  j["length_cap"] = j_int(b.length_cap);
  j["node_cap"] = b.node_cap;
  return j;
}

ordered_json j_claim(const ClaimCheckResult& c) {
  ordered_json j;
  j["claim_id"] = c.claim_id;
  j["params"] = c.params;
  j["verdict"] = to_string(c.verdict);
  j["detail"] = c.detail;
  if (c.witness_value) j["witness_value"] = c.witness_value->str();
  if (c.witness) j["witness"] = j_factorization(*c.witness);
  return j;
}

// TSV: one key<TAB>value line per object field; claim arrays get a header row
std::string tsv_cell(const ordered_json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void emit(const ordered_json& j, const std::string& format, std::ostream& os) {
  if (format == "json") {
    os << j.dump() << "\n";
    return;
  }
  if (j.is_array()) {
    if (!j.empty() && j.front().is_object() && j.front().contains("claim_id")) {
      os << "claim_id\tverdict\tparams\tdetail\n";
      for (const ordered_json& row : j)
        os << tsv_cell(row.at("claim_id")) << "\t" << tsv_cell(row.at("verdict")) << "\t"
           << tsv_cell(row.at("params")) << "\t" << tsv_cell(row.at("detail")) << "\n";
    } else {
      for (const ordered_json& v : j) os << tsv_cell(v) << "\n";
    }
    return;
  }
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      os << it.key() << "\t" << tsv_cell(it.value()) << "\n";
    return;
  }
  os << tsv_cell(j) << "\n";
}

// ---- cli state ----

struct Ctx {
  std::string spec_path;
  std::string format = "json";
  std::string value_cap = "200";
  std::string denom_cap = "64";
  long long length_cap = 400;
  long long node_cap = 10000000;

  std::string x, u, bound, denom_bound;
  long long k = 0;
  bool monotone = false;

  std::string family, claim;
  std::string alpha = "1+1*sqrt(2)";
  std::string seed = "0,1,2,7,74";
  std::string bs = "pow2";
  std::string alphas;
  std::string ratio = "3/2";
  long long n = -1;
  long long i = -1;
};

SearchBudget make_budget(const Ctx& ctx) {
  SearchBudget b;
  b.value_cap = RealCut::parse(ctx.value_cap);
  b.denom_cap = Int(ctx.denom_cap);
  b.length_cap = Int(ctx.length_cap);
  b.node_cap = ctx.node_cap;
  if (!(b.value_cap.sign() > 0) || b.denom_cap < 1 || b.length_cap < 1 || b.node_cap < 1)
    throw std::invalid_argument("budget flags must all be positive");
  return b;
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

// ---- verify-paper plumbing ----

SequenceRule parse_bs_flag(const std::string& s) {
  if (s == "pow2") return SequenceRule::pow2();
  std::vector<Int> ints;
  for (const std::string& t : split_commas(s)) ints.emplace_back(t);
  return SequenceRule::explicit_ints(std::move(ints));
}

FamilyInstance make_family(const Ctx& ctx) {
  if (ctx.family == "ex44") return FamilyInstance::ex44(RealCut::parse(ctx.alpha));
  if (ctx.family == "prop39") {
    std::vector<Int> seed;
    for (const std::string& t : split_commas(ctx.seed)) seed.emplace_back(t);
    return FamilyInstance::prop39(std::move(seed));
  }
  if (ctx.family == "thm312") return FamilyInstance::thm312(parse_bs_flag(ctx.bs));
  if (ctx.family == "ex37") {
    if (ctx.alphas.empty())
      throw std::invalid_argument("verify-paper: --alphas is required for family ex37");
    std::vector<RealCut> cuts;
    for (const std::string& t : split_commas(ctx.alphas)) cuts.push_back(RealCut::parse(t));
    return FamilyInstance::ex37(SequenceRule::explicit_cuts(std::move(cuts)),
                                parse_bs_flag(ctx.bs));
  }
  if (ctx.family == "ex36a") return FamilyInstance::ex36a();
  if (ctx.family == "ex36b") return FamilyInstance::ex36b();
  if (ctx.family == "ex36c") return FamilyInstance::ex36c(Rational::parse(ctx.ratio));
  if (ctx.family == "ex38a") return FamilyInstance::ex38a();
  if (ctx.family == "ex38b") return FamilyInstance::ex38b();
  if (ctx.family == "ex313") return FamilyInstance::ex313();
  throw std::invalid_argument("verify-paper: unknown family \"" + ctx.family + "\"");
}

std::string default_claim(const std::string& family) {
  if (family == "ex44") return "rho";
  if (family == "prop39") return "tau";
  if (family == "thm312") return "two-in-lengths";
  if (family == "ex37") return "atom-window";
  return "counterexamples";
}

long long require_flag(long long v, const char* flag, const char* claim) {
  if (v < 0)
    throw std::invalid_argument(std::string("verify-paper: claim ") + claim +
                                " requires " + flag);
  return v;
}

std::vector<ClaimCheckResult> run_verify(const Ctx& ctx, const SearchBudget& budget) {
  if (ctx.family.empty()) return run_claim_suite(budget);
  std::string claim = ctx.claim.empty() ? default_claim(ctx.family) : ctx.claim;
  if (claim == "counterexamples") {
    std::vector<ClaimCheckResult> rows;
    for (ClaimCheckResult& c : verify_counterexamples())
      if (c.claim_id.find("/" + ctx.family + "/") != std::string::npos)
        rows.push_back(std::move(c));
    if (rows.empty())
      throw std::invalid_argument("verify-paper: no counterexample rows for family " +
                                  ctx.family);
    return rows;
  }
  FamilyInstance f = make_family(ctx);
  if (claim == "rho")
    return {verify_rho_formula(f, Int(require_flag(ctx.n, "--n", "rho")))};
  if (claim == "lambda")
    return {verify_lambda_formula(f, Int(require_flag(ctx.n, "--n", "lambda")))};
  if (claim == "union")
    return {verify_union_interval(f, Int(require_flag(ctx.n, "--n", "union")), budget)};
  if (claim == "tau")
    return {verify_tau_lower_bound(f, require_flag(ctx.n, "--n", "tau"), budget)};
  if (claim == "atom-window")
    return {verify_atom_window(f, require_flag(ctx.i, "--i", "atom-window"))};
  if (claim == "two-in-lengths")
    return {verify_two_in_lengths(f, require_flag(ctx.i, "--i", "two-in-lengths"))};
  if (claim == "M-bound") {
    if (ctx.u.empty())
      throw std::invalid_argument("verify-paper: claim M-bound requires --u");
    std::vector<Rational> sample;
    for (const std::string& t : split_commas(ctx.u)) sample.push_back(Rational::parse(t));
    return {verify_M_bound(f, sample, budget)};
  }
  throw std::invalid_argument("verify-paper: unknown claim \"" + claim + "\"");
}

// ---- subcommand handlers ----

struct Status {
  bool truncated = false;    // any LowerTruncated / Inconclusive / lower bound
  bool failed_claim = false; // any claim verdict Fail
};

ordered_json j_tame(const TameReport& rep, const char* key, Status& st) {
  ordered_json j;
  j["u"] = rep.u.str();
  j["invariant"] = key;
  switch (rep.value_kind) {
    case TameReport::Value::Exact:
      j["value"] = j_int(rep.value);
      j["certified"] = true;
      break;
    case TameReport::Value::LowerBound:
      j["value"] = j_int(rep.value);
      j["certified"] = false;
      st.truncated = true;
      break;
    case TameReport::Value::Infinite:
      j["value"] = j_infinite(true);
      j["certified"] = true;
      break;
  }
  if (rep.upper_bound) j["upper_bound"] = j_int(*rep.upper_bound);
  if (rep.witness) j["witness"] = j_factorization(*rep.witness);
  return j;
}

ordered_json handle(const std::string& cmd, const Ctx& ctx, const SearchBudget& budget,
                    Status& st) {
  if (cmd == "verify-paper") {
    std::vector<ClaimCheckResult> rows = run_verify(ctx, budget);
    for (const ClaimCheckResult& c : rows) {
      if (c.verdict == ClaimCheckResult::Verdict::Fail) st.failed_claim = true;
      if (c.verdict == ClaimCheckResult::Verdict::Inconclusive) st.truncated = true;
    }
    if (rows.size() == 1) return j_claim(rows.front());
    ordered_json arr = ordered_json::array();
    for (const ClaimCheckResult& c : rows) arr.push_back(j_claim(c));
    return arr;
  }

  Monoid m = load_monoid(ctx.spec_path);
  ordered_json j;

  if (cmd == "member") {
    Rational x = Rational::parse(ctx.x);
    j["x"] = x.str();
    j["member"] = m.member(x);
  } else if (cmd == "divides") {
    Rational u = Rational::parse(ctx.u), x = Rational::parse(ctx.x);
    j["u"] = u.str();
    j["x"] = x.str();
    j["divides"] = m.divides(u, x);
  } else if (cmd == "atoms") {
    RealCut bound = RealCut::parse(ctx.bound);
    Int db = ctx.denom_bound.empty() ? budget.denom_cap : Int(ctx.denom_bound);
    AtomList al = m.atoms_below(bound, db);
    ordered_json arr = ordered_json::array();
    for (const Rational& a : al.atoms) arr.push_back(a.str());
    j["atoms"] = std::move(arr);
    j["complete_below"] = al.complete_below.str();
    j["complete"] = al.complete;
    j["note"] = al.note;
    if (!al.complete) st.truncated = true;
  } else if (cmd == "factorize") {
    Rational x = Rational::parse(ctx.x);
    CertifiedSet<Factorization> Z = factorizations(m, x, budget);
    j["x"] = x.str();
    j["count"] = static_cast<long long>(Z.items.size());
    ordered_json arr = ordered_json::array();
    for (const Factorization& z : Z.items) arr.push_back(j_factorization(z));
    j["factorizations"] = std::move(arr);
    j["exact"] = Z.exact();
    j["budget"] = j_budget(budget);
    if (!Z.exact()) st.truncated = true;
  } else if (cmd == "lengths") {
    CertifiedSet<Int> L = lengths(m, Rational::parse(ctx.x), budget);
    j["lengths"] = j_ints(L.items);
    j["exact"] = L.exact();
    if (!L.exact()) st.truncated = true;
  } else if (cmd == "delta") {
    DeltaReport rep = delta_observed(m, budget);
    j["observed"] = j_ints(rep.observed);
    j["min_delta"] = rep.min_delta ? j_int(*rep.min_delta) : ordered_json(nullptr);
    j["min_witness"] = rep.min_witness ? ordered_json(rep.min_witness->str())
                                       : ordered_json(nullptr);
    j["exact"] = rep.certificate == Certificate::Exact;
    if (rep.certificate != Certificate::Exact) st.truncated = true;
  } else if (cmd == "elasticity") {
    ElasticityReport rep = elasticity(m);
    switch (rep.kind) {
      case ElasticityReport::Kind::Finite:
        j["elasticity"] = rep.value.str();
        break;
      case ElasticityReport::Kind::Infinite:
        j["elasticity"] = j_infinite(true);
        break;
      case ElasticityReport::Kind::Unknown:
        j["elasticity"] = nullptr;
        st.truncated = true;
        break;
    }
    j["accepted"] = to_string(rep.accepted);
  } else if (cmd == "rho-k" || cmd == "lambda-k" || cmd == "union-k") {
    UnionReport rep = union_k(m, Int(ctx.k), budget);
    j["k"] = j_int(rep.k);
    if (cmd == "union-k") j["observed"] = j_ints(rep.observed);
    if (cmd != "rho-k")
      j["lambda_k"] = rep.lambda_k ? j_int(*rep.lambda_k) : ordered_json(nullptr);
    if (cmd != "lambda-k") {
      if (rep.rho_infinite)
        j["rho_k"] = j_infinite(true);
      else
        j["rho_k"] = rep.rho_k ? j_int(*rep.rho_k) : ordered_json(nullptr);
    }
    bool need_rho = cmd != "lambda-k", need_lambda = cmd != "rho-k";
    bool exact = rep.certificate == Certificate::Exact;
    if ((need_rho && !rep.rho_k && !rep.rho_infinite) || (need_lambda && !rep.lambda_k) ||
        (cmd == "union-k" && !exact))
      st.truncated = true;
    j["exact"] = exact;
  } else if (cmd == "catenary") {
    Rational x = Rational::parse(ctx.x);
    CertifiedValue c = ctx.monotone ? monotone_catenary(m, x, budget)
                                    : catenary(m, x, budget);
    j["x"] = x.str();
    j[ctx.monotone ? "monotone_catenary" : "catenary"] = j_int(c.value);
    j["exact"] = c.exact();
    if (!c.exact()) st.truncated = true;
  } else if (cmd == "omega") {
    j = j_tame(omega(m, Rational::parse(ctx.u), budget), "omega", st);
  } else if (cmd == "tau") {
    j = j_tame(tau(m, Rational::parse(ctx.u), budget), "tau", st);
  } else if (cmd == "tame") {
    j = j_tame(tame_degree(m, Rational::parse(ctx.u), budget), "tame_degree", st);
  } else if (cmd == "big-m") {
    j = j_tame(M_of(m, Rational::parse(ctx.u), budget), "M", st);
  } else if (cmd == "lambda-inv") {
    LambdaReport rep = Lambda(m, budget);
    switch (rep.kind) {
      case LambdaReport::Kind::Finite:
        j["Lambda"] = j_int(rep.bound);
        j["certified"] = true;
        break;
      case LambdaReport::Kind::InfiniteCertified:
        j["Lambda"] = j_infinite(true);
        j["certified"] = true;
        break;
      case LambdaReport::Kind::LowerBound:
        j["Lambda"] = j_int(rep.bound);
        j["certified"] = false;
        st.truncated = true;
        break;
    }
    j["witness"] = rep.witness ? ordered_json(rep.witness->str()) : ordered_json(nullptr);
  } else if (cmd == "closure") {
    ClosureDescription c = m.closure();
    j["scale_n"] = j_int(c.scale_n);
    j["denominators"] = c.denominators.str();
    j["quotient_group"] = c.quotient_group;
  } else if (cmd == "conductor") {
    ConductorDescription c = m.conductor();
    switch (c.status) {
      case ConductorDescription::Status::Empty:
        j["status"] = "Empty";
        break;
      case ConductorDescription::Status::Threshold:
        j["status"] = "Threshold";
        j["sigma"] = c.sigma.str();
        j["attained"] = c.attained;
        break;
      case ConductorDescription::Status::Whole:
        j["status"] = "Whole";
        break;
      case ConductorDescription::Status::Unknown:
        j["status"] = "Unknown";
        st.truncated = true;
        break;
    }
  } else if (cmd == "classify") {
    ClassifyReport c = m.classify();
    j["valuation"] = to_string(c.valuation);
    j["seminormal"] = to_string(c.seminormal);
    j["bf"] = to_string(c.bf);
    j["strongly_primary"] = to_string(c.strongly_primary);
    j["conductor_nonempty"] = to_string(c.conductor_nonempty);
    j["inf_positive"] = to_string(c.inf_positive);
  } else {
    throw std::invalid_argument("unknown subcommand: " + cmd);
  }
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  // a parallelism cap; all current computations run on a single thread
  if (const char* tenv = std::getenv("PUISEUX_KIT_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(tenv, &end, 10);
    if (end == tenv || *end != '\0' || v < 1) {
      std::cerr << "error: PUISEUX_KIT_THREADS must be a positive integer\n";
      return 1;
    }
  }

  Ctx ctx;
  CLI::App app{"exact factorization invariants of Puiseux monoids"};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* sub, bool needs_spec) {
    if (needs_spec)
      sub->add_option("--spec", ctx.spec_path, "monoid spec file (JSON)")
          ->required()
          ->check(CLI::ExistingFile);
    sub->add_option("--format", ctx.format, "output format")
        ->check(CLI::IsMember({"json", "tsv"}));
    sub->add_option("--value-cap", ctx.value_cap, "search cap on element values");
    sub->add_option("--denom-cap", ctx.denom_cap, "search cap on denominators");
    sub->add_option("--length-cap", ctx.length_cap, "search cap on factorization lengths");
    sub->add_option("--node-cap", ctx.node_cap, "search cap on enumeration nodes");
    return sub;
  };

  add_common(app.add_subcommand("member", "test membership of x"), true)
      ->add_option("--x", ctx.x)->required();
  {
    CLI::App* s = add_common(app.add_subcommand("divides", "test whether u divides x"), true);
    s->add_option("--u", ctx.u)->required();
    s->add_option("--x", ctx.x)->required();
  }
  {
    CLI::App* s = add_common(app.add_subcommand("atoms", "list atoms up to a bound"), true);
    s->add_option("--bound", ctx.bound)->required();
    s->add_option("--denom-bound", ctx.denom_bound);
  }
  add_common(app.add_subcommand("factorize", "enumerate factorizations of x"), true)
      ->add_option("--x", ctx.x)->required();
  add_common(app.add_subcommand("lengths", "length set of x"), true)
      ->add_option("--x", ctx.x)->required();
  add_common(app.add_subcommand("delta", "observed delta set over the budget window"), true);
  add_common(app.add_subcommand("elasticity", "elasticity of the monoid"), true);
  add_common(app.add_subcommand("rho-k", "largest length co-occurring with k"), true)
      ->add_option("--k", ctx.k)->required();
  add_common(app.add_subcommand("lambda-k", "least length co-occurring with k"), true)
      ->add_option("--k", ctx.k)->required();
  add_common(app.add_subcommand("union-k", "union of length sets through k"), true)
      ->add_option("--k", ctx.k)->required();
  {
    CLI::App* s = add_common(app.add_subcommand("catenary", "catenary degree of x"), true);
    s->add_option("--x", ctx.x)->required();
    s->add_flag("--monotone", ctx.monotone, "monotone chains only");
  }
  add_common(app.add_subcommand("omega", "omega invariant at u"), true)
      ->add_option("--u", ctx.u)->required();
  add_common(app.add_subcommand("tau", "tau invariant at u"), true)
      ->add_option("--u", ctx.u)->required();
  add_common(app.add_subcommand("tame", "tame degree at u"), true)
      ->add_option("--u", ctx.u)->required();
  add_common(app.add_subcommand("big-m", "uniform divisibility bound M(u)"), true)
      ->add_option("--u", ctx.u)->required();
  add_common(app.add_subcommand("lambda-inv", "sup of min factorization lengths"), true);
  add_common(app.add_subcommand("closure", "root closure description"), true);
  add_common(app.add_subcommand("conductor", "conductor description"), true);
  add_common(app.add_subcommand("classify", "structural classification verdicts"), true);
  {
    CLI::App* s = add_common(
        app.add_subcommand("verify-paper", "run quantitative claim checks"), false);
    s->add_option("--family", ctx.family,
                  "ex37|thm312|prop39|ex44|ex36a|ex36b|ex36c|ex313 (omit: full suite)");
    s->add_option("--claim", ctx.claim,
                  "atom-window|M-bound|tau|rho|lambda|union|two-in-lengths|counterexamples");
    s->add_option("--alpha", ctx.alpha, "ex44 threshold, e.g. \"1+1*sqrt(2)\"");
    s->add_option("--seed", ctx.seed, "prop39 seed, comma separated");
    s->add_option("--bs", ctx.bs, "moduli: \"pow2\" or comma separated integers");
    s->add_option("--alphas", ctx.alphas, "ex37 thresholds, comma separated");
    s->add_option("--ratio", ctx.ratio, "ex36c ratio");
    s->add_option("--n", ctx.n, "index for rho/lambda/union/tau");
    s->add_option("--i", ctx.i, "level index for atom-window/two-in-lengths");
    s->add_option("--u", ctx.u, "sample elements for M-bound, comma separated");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  std::string cmd = app.get_subcommands().front()->get_name();
  try {
    SearchBudget budget = make_budget(ctx);
    Status st;
    ordered_json out = handle(cmd, ctx, budget, st);
    emit(out, ctx.format, std::cout);
    if (st.failed_claim) return 3;
    if (st.truncated) return 2;
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
