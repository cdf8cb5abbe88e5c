#include "cyclalg/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "cyclalg/brauer.hpp"
#include "cyclalg/cyclic.hpp"
#include "cyclalg/descent.hpp"
#include "cyclalg/errors.hpp"
#include "cyclalg/numtheory.hpp"
#include "cyclalg/rootdatum.hpp"
#include "cyclalg/sections.hpp"
#include "json.hpp"

namespace cyclalg {

namespace {

using nlohmann::json;

struct Outcome {
  int status = 0;
  std::string text;
  json result = json::object();
};

Outcome usage(const std::string& msg) { throw Error(Errc::BadInput, msg); }

std::string csa_str(const CSADescriptor& A) {
  return "A(" + std::to_string(A.d) + "," + std::to_string(A.r) + ")";
}

std::string group_str(const GroupDescriptor& G) { return "SL_" + std::to_string(G.n) + "(" + csa_str(G.algebra) + ")"; }

json csa_json(const CSADescriptor& A) { return {{"d", A.d}, {"r", A.r}}; }

json group_json(const GroupDescriptor& G) { return {{"n", G.n}, {"algebra", csa_json(G.algebra)}}; }

std::string prec_str(int p) { return p >= LaurentSeries::kExact ? "exact" : std::to_string(p); }

json prec_json(int p) { return p >= LaurentSeries::kExact ? json(nullptr) : json(p); }

std::string list_str(const std::vector<int>& v) {
  std::string s = "[";
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + std::to_string(v[k]);
  return s + "]";
}

void require_positive(std::int64_t v, const char* name) {
  if (v < 1) usage(std::string("--") + name + " must be >= 1");
}

void require_prime(std::int64_t p) {
  if (p < 2 || !is_prime(static_cast<std::uint64_t>(p))) throw Error(Errc::NotPrime, "--p = " + std::to_string(p));
}

// {"order": n, "table": [[...]], "normal_subset": [...]}
ExtensionProblem load_group(const std::string& path) {
  std::ifstream in(path);
  if (!in) usage("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    usage(path + ": " + e.what());
  }
  for (const char* key : {"order", "table", "normal_subset"})
    if (!j.contains(key)) usage(path + ": missing key \"" + key + "\"");
  try {
    auto table = j.at("table").get<std::vector<std::vector<int>>>();
    if (j.at("order").get<int>() != static_cast<int>(table.size()))
      throw Error(Errc::BadGroup, path + ": order does not match the table");
    ExtensionProblem p{FiniteGroupTable(std::move(table)), j.at("normal_subset").get<std::vector<int>>()};
    check_extension_problem(p);
    return p;
  } catch (const json::exception& e) {
    usage(path + ": " + e.what());
  }
  std::abort();
}

Outcome split_outcome(const SplitVerdict& v, std::int64_t n, std::int64_t d) {
  Outcome o;
  o.result = {{"splits", v.splits}, {"n", n}, {"d", d}};
  if (v.splits) {
    o.text = "SPLIT";
    o.result["witness"] = nullptr;
  } else {
    o.status = 1;
    o.text = "NON-SPLIT (witness: subfield index " + std::to_string(v.witness_index) + " with gcd " +
             std::to_string(v.witness_gcd) + ")";
    o.result["witness"] = {{"subfield_index", v.witness_index}, {"gcd", v.witness_gcd}};
  }
  return o;
}

json report_json(const VerificationReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"name", c.name},
                      {"description", c.description},
                      {"pass", c.pass},
                      {"trials", c.trials},
                      {"min_prec", prec_json(c.min_prec)},
                      {"failure", c.failure}});
  return {{"p", r.p},       {"i", r.i},         {"d", r.d},         {"r", r.r},     {"n", r.n},
          {"a", r.a},       {"b", r.b},         {"a_prime", r.ap},  {"b_prime", r.bp}, {"c", r.c},
          {"prec", r.prec}, {"samples", r.samples}, {"seed", r.seed}, {"basis", r.basis},
          {"all_pass", r.all_pass()}, {"checks", checks}};
}

std::string report_text(const VerificationReport& r) {
  std::ostringstream s;
  s << "section synth p=" << r.p << " i=" << r.i << " d=" << r.d << " r=" << r.r << " n=" << r.n << "\n"
    << "  a=" << r.a << " b=" << r.b << " a'=" << r.ap << " b'=" << r.bp << " c=" << r.c << " prec=" << r.prec
    << " samples=" << r.samples << " seed=" << r.seed << " basis=" << r.basis << "\n";
  int passed = 0;
  for (const auto& c : r.checks) {
    passed += c.pass;
    s << "  " << (c.pass ? "PASS" : "FAIL") << "  " << std::left << std::setw(22) << c.name << " trials=" << std::setw(4)
      << c.trials << " min_prec=" << prec_str(c.min_prec) << "\n";
    if (!c.pass) s << "        " << c.failure << "\n";
  }
  s << (r.all_pass() ? "ALL PASS" : "FAILED") << " (" << passed << "/" << r.checks.size() << ")";
  return s.str();
}

int precision_default() {
  const char* env = std::getenv(kPrecisionEnv);
  if (!env || !*env) return kDefaultPrecision;
  try {
    std::size_t used = 0;
    const int v = std::stoi(env, &used);
    if (used == std::string(env).size()) return v;
  } catch (const std::exception&) {
  }
  throw Error(Errc::BadInput, std::string(kPrecisionEnv) + " is not an integer: " + env);
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::string command;
  bool as_json = false;
  auto fail = [&](int code, const std::string& kind, const std::string& msg) {
    if (as_json) {
      json j = {{"command", command.empty() ? json(nullptr) : json(command)},
                {"status", "error"},
                {"exit_code", code},
                {"error", {{"code", kind}, {"message", msg}}}};
      out << j.dump(2) << "\n";
    }
    err << "error: " << msg << "\n";
    return code;
  };

  int prec = 0;
  try {
    prec = precision_default();
  } catch (const Error& e) {
    return fail(2, errc_name(e.code()), e.what());
  }
  std::uint64_t seed = 1;

  CLI::App app{"Cyclic algebras, Brauer classes and automorphism sections over F_q((T))", "cyclalg"};
  app.require_subcommand(1);
  app.add_option("--prec", prec, std::string("series precision (default 32, or $") + kPrecisionEnv + ")");
  app.add_option("--seed", seed, "sampling seed");
  app.add_flag("--json", as_json, "JSON report");

  std::function<Outcome()> action;
  auto bind = [&](CLI::App* sub, std::string name, std::function<Outcome()> fn) {
    sub->fallthrough();
    sub->callback([&, name, fn] {
      command = name;
      action = fn;
    });
  };

  std::int64_t n = 1, d = 1, r = 0, m = 1, p = 2, i = 1;
  std::optional<std::int64_t> n_opt;

  auto* brauer = app.add_subcommand("brauer", "Brauer class arithmetic of A(d,r)");
  brauer->require_subcommand(1);
  auto* inv = brauer->add_subcommand("inv", "invariant r/d in Q/Z");
  inv->add_option("--d", d)->required();
  inv->add_option("--r", r)->required();
  bind(inv, "brauer inv", [&] {
    require_positive(d, "d");
    Outcome o;
    const BrauerClass c = invariant({d, r});
    o.text = c.str();
    o.result = {{"algebra", csa_json({d, r})}, {"invariant", {{"num", c.num}, {"den", c.den}}}};
    return o;
  });
  auto* wed = brauer->add_subcommand("wedderburn", "A(d,r) = M_a(D)");
  wed->add_option("--d", d)->required();
  wed->add_option("--r", r)->required();
  bind(wed, "brauer wedderburn", [&] {
    require_positive(d, "d");
    Outcome o;
    const WedderburnForm w = wedderburn({d, r});
    o.text = "M_" + std::to_string(w.a) + "(" + csa_str(w.division) + ")";
    o.result = {{"algebra", csa_json({d, r})}, {"a", w.a}, {"division", csa_json(w.division)}};
    return o;
  });
  auto* bc = brauer->add_subcommand("basechange", "base change along the degree-m unramified extension");
  bc->add_option("--d", d)->required();
  bc->add_option("--r", r)->required();
  bc->add_option("--m", m)->required();
  bc->add_option("--n", n_opt, "treat the input as SL_n(A(d,r))");
  bind(bc, "brauer basechange", [&] {
    require_positive(d, "d");
    require_positive(m, "m");
    Outcome o;
    if (n_opt) {
      require_positive(*n_opt, "n");
      const GroupDescriptor g = base_change_group({*n_opt, {d, r}}, m);
      o.text = group_str(g);
      o.result = {{"input", group_json({*n_opt, {d, r}})}, {"m", m}, {"group", group_json(g)}};
    } else {
      const CSADescriptor A = base_change_csa({d, r}, m);
      const WedderburnForm w = wedderburn(A);
      o.text = csa_str(A) + " = M_" + std::to_string(w.a) + "(" + csa_str(w.division) + "), inv " + invariant(A).str();
      o.result = {{"input", csa_json({d, r})}, {"m", m}, {"algebra", csa_json(A)}, {"a", w.a},
                  {"division", csa_json(w.division)}};
    }
    return o;
  });

  auto* split = app.add_subcommand("split-check", "does SL_n(A(d,r)) split over a subfield / globally in char p");
  bool charp = false, subfield = false;
  auto* f_charp = split->add_flag("--charp", charp, "global criterion over F_{p^i}((T))");
  auto* f_sub = split->add_flag("--subfield", subfield, "criterion for one subfield of index m");
  f_charp->excludes(f_sub);
  split->add_option("--n", n)->required();
  split->add_option("--d", d)->required();
  split->add_option("--p", p);
  split->add_option("--i", i);
  split->add_option("--m", m);
  bind(split, "split-check", [&] {
    require_positive(n, "n");
    require_positive(d, "d");
    if (charp == subfield) usage("split-check needs exactly one of --charp, --subfield");
    if (charp) {
      require_prime(p);
      require_positive(i, "i");
      return split_outcome(split_verdict_charp(n, d, p, i), n, d);
    }
    require_positive(m, "m");
    Outcome o;
    const std::int64_t g = std::gcd(n * d, m);
    const bool s = splits_over_subfield(n, d, m);
    o.result = {{"splits", s}, {"n", n}, {"d", d}, {"m", m}, {"gcd", g}};
    if (s) {
      o.text = "SPLIT";
    } else {
      o.status = 1;
      o.text = "NON-SPLIT (witness: gcd(nd, m) = " + std::to_string(g) + " does not divide n = " + std::to_string(n) + ")";
    }
    return o;
  });

  auto* df = app.add_subcommand("descent-form", "SL_{n'}(A(d',r')) over k whose base change to l is SL_n(A(d,r))");
  df->add_option("--n", n)->required();
  df->add_option("--d", d)->required();
  df->add_option("--r", r)->required();
  df->add_option("--m", m)->required();
  bind(df, "descent-form", [&] {
    require_positive(n, "n");
    require_positive(d, "d");
    require_positive(m, "m");
    Outcome o;
    o.result = {{"input", group_json({n, {d, r}})}, {"m", m}};
    if (auto f = descent_form(n, d, r, m)) {
      o.text = group_str(*f);
      o.result["form"] = group_json(*f);
    } else {
      const std::int64_t g = std::gcd(n * d, m);
      o.status = 1;
      o.text = "NO FORM (witness: gcd(nd, m) = " + std::to_string(g) + " does not divide n = " + std::to_string(n) + ")";
      o.result["form"] = nullptr;
      o.result["gcd"] = g;
    }
    return o;
  });

  auto* nrd = app.add_subcommand("nrd", "reduced norm of sum_s u^s x_s in A(d,r)");
  std::vector<std::string> comps;
  nrd->add_option("--p", p)->required();
  nrd->add_option("--i", i)->required();
  nrd->add_option("--d", d)->required();
  nrd->add_option("--r", r)->required();
  nrd->add_option("--elem", comps, "coefficient of u^s, s = 0, 1, ... (series over F_{p^{id}})")->required();
  bind(nrd, "nrd", [&] {
    require_positive(i, "i");
    require_positive(d, "d");
    require_prime(p);
    if (static_cast<std::int64_t>(comps.size()) > d) usage("more --elem components than d");
    auto F = build_tower(static_cast<unsigned>(p), static_cast<int>(i), static_cast<int>(d), 1);
    CyclicAlgebra A(F, static_cast<int>(i), static_cast<int>(d), static_cast<int>(r), prec);
    AlgebraElement x = A.zero();
    for (std::size_t s = 0; s < comps.size(); ++s) x.c[s] = parse_series(*F, A.id(), comps[s], prec);
    const LaurentSeries v = A.nrd(x);
    Outcome o;
    o.text = v.str();
    o.result = {{"algebra", {{"p", p}, {"i", i}, {"d", d}, {"r", r}}},
                {"nrd", v.str()},
                {"in_K", coefficients_in(v, A.i())},
                {"prec", prec_json(v.prec())}};
    return o;
  });

  auto* section = app.add_subcommand("section", "sections of Aut(SL_n(A(d,r))) -> Aut(K)");
  section->require_subcommand(1);
  auto* synth = section->add_subcommand("synth", "build the section and verify it on random samples");
  int samples = 20;
  std::string basis = "equivariant";
  synth->add_option("--p", p)->required();
  synth->add_option("--i", i)->required();
  synth->add_option("--d", d)->required();
  synth->add_option("--r", r)->required();
  synth->add_option("--n", n)->required();
  synth->add_option("--samples", samples);
  synth->add_option("--basis", basis, "equivariant | ambient")->check(CLI::IsMember({"equivariant", "ambient"}));
  bind(synth, "section synth", [&] {
    require_positive(n, "n");
    require_positive(d, "d");
    require_positive(i, "i");
    require_prime(p);
    if (samples < 1) usage("--samples must be >= 1");
    const SplitVerdict v = split_verdict_charp(n, d, p, i);
    if (!v.splits) {
      Outcome o = split_outcome(v, n, d);
      o.text = "REFUSED: " + o.text;
      o.result["refused"] = true;
      return o;
    }
    SectionOptions opt;
    opt.prec = prec;
    opt.basis = basis == "ambient" ? CbBasis::AmbientGenerator : CbBasis::Equivariant;
    const SectionContext ctx = make_section_context(static_cast<unsigned>(p), static_cast<int>(i), static_cast<int>(d),
                                                    static_cast<int>(r), static_cast<int>(n), opt);
    const VerificationReport rep = verify_section(ctx, samples, seed);
    Outcome o;
    o.status = rep.all_pass() ? 0 : 1;
    o.text = report_text(rep);
    o.result = {{"refused", false}, {"report", report_json(rep)}};
    return o;
  });

  auto* hanke = app.add_subcommand("hanke", "is alpha in the image of Aut(G) for G = SL_1(A(l/k, gamma, a)), [l:k] = 3");
  std::string a_text, alpha_text;
  hanke->add_option("--p", p)->required();
  hanke->add_option("--i", i)->required();
  hanke->add_option("--a", a_text, "element of k^x, e.g. \"T\"")->required();
  hanke->add_option("--alpha", alpha_text, "automorphism of k, \"e=<int>; T -> <series>\"")->required();
  bind(hanke, "hanke", [&] {
    require_prime(p);
    require_positive(i, "i");
    auto F = build_tower(static_cast<unsigned>(p), static_cast<int>(i), 3, 1);
    const LaurentSeries a = parse_series(*F, static_cast<int>(i), a_text, prec);
    const LocalFieldAuto alpha = parse_auto(*F, static_cast<int>(i), alpha_text, prec);
    const HankeResult h = hanke_test_deg3(F, static_cast<int>(i), a, alpha, prec);
    Outcome o;
    o.result = {{"in_aut_g", h.in_aut_g}, {"witness_verified", h.witness_verified}, {"min_prec", prec_json(h.min_prec)}};
    if (h.witness) {
      o.result["witness"] = {{"branch", h.witness->branch},
                             {"lambda", h.witness->lambda.str()},
                             {"g", matrix_str(h.witness->g)}};
    } else {
      o.result["witness"] = nullptr;
    }
    if (h.in_aut_g) {
      o.text = "IN AUT(G) (branch " + std::to_string(h.witness->branch) + ", lambda = " + h.witness->lambda.str() +
               (h.witness_verified ? ", witness verified)" : ", witness NOT verified)");
      if (!h.witness_verified) o.status = 1;
    } else {
      o.status = 1;
      o.text = "NOT IN AUT(G) (neither alpha(a)/a nor alpha(a)*a is a norm from l)";
    }
    return o;
  });

  auto* ext = app.add_subcommand("extension", "finite group extensions 1 -> N -> G -> G/N -> 1");
  ext->require_subcommand(1);
  auto* esplit = ext->add_subcommand("split", "search for a complement of N in G");
  std::string group_file;
  int bound = kDefaultOrderBound;
  esplit->add_option("--group", group_file, "JSON {order, table, normal_subset}")->required();
  esplit->add_option("--bound", bound, "largest |G| searched");
  bind(esplit, "extension split", [&] {
    const ExtensionProblem pr = load_group(group_file);
    const ComplementResult c = extension_splits(pr, bound);
    Outcome o;
    o.result = {{"order", pr.G.order()}, {"normal_order", pr.N.size()}, {"splits", c.splits}};
    if (c.splits) {
      o.text = "SPLIT (complement: " + list_str(c.complement) + ")";
      o.result["complement"] = c.complement;
    } else {
      o.status = 1;
      o.text = "NON-SPLIT (witness: no subgroup of order " + std::to_string(pr.G.order() / pr.N.size()) +
               " meets N trivially)";
      o.result["complement"] = nullptr;
    }
    return o;
  });

  auto* ses = app.add_subcommand("ses-verdict", "does 1 -> Inn -> Aut -> Out -> 1 split for a quasi-split group");
  std::string family, isogeny = "sc", tower_file;
  int rank = 1, g = 1;
  ses->add_option("--type", family, "Dynkin family A..G")->required();
  ses->add_option("--rank", rank)->required();
  ses->add_option("--isogeny", isogeny, "sc | ad | intermediate");
  ses->add_option("--g", g, "degree of the classifying extension (1, 2, 3, 6)")->required();
  ses->add_option("--tower", tower_file, "JSON {order, table, normal_subset} for g = 2, 3");
  ses->add_option("--bound", bound, "largest |G| searched");
  bind(ses, "ses-verdict", [&] {
    if (family.size() != 1) usage("--type must be one letter A..G");
    auto fam = parse_family(family[0]);
    if (!fam) usage("unknown family " + family);
    auto iso = parse_isogeny(isogeny);
    if (!iso) usage("unknown isogeny " + isogeny);
    const TitsIndex idx{g, {*fam, rank, *iso}};
    std::optional<ExtensionProblem> tower;
    if (!tower_file.empty()) tower = load_group(tower_file);
    const SesVerdict v = ses_verdict(idx, tower ? &*tower : nullptr, bound);
    const char* aut = aut_r_name(aut_r(idx.type));
    Outcome o;
    o.result = {{"type", family + std::to_string(rank)}, {"isogeny", isogeny}, {"g", g}, {"aut_r", aut},
                {"splits", v.splits}, {"consulted_tower", v.consulted_tower}};
    o.result["complement"] = v.complement.splits ? json(v.complement.complement) : json(nullptr);
    const std::string head = std::string(" (Aut R = ") + aut + ", g = " + std::to_string(g);
    if (v.splits) {
      o.text = "SPLIT" + head + (v.consulted_tower ? ", complement: " + list_str(v.complement.complement) : "") + ")";
    } else {
      o.status = 1;
      o.text = "NON-SPLIT" + head + ", witness: tower has no complement)";
    }
    return o;
  });

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    return fail(2, "Usage", e.what());
  }
  if (prec < 4) return fail(2, "BadInput", "precision must be >= 4, got " + std::to_string(prec));
  if (!action) return fail(2, "Usage", "missing subcommand");

  Outcome o;
  try {
    o = action();
  } catch (const Error& e) {
    return fail(2, errc_name(e.code()), e.what());
  }
  if (as_json) {
    json j = {{"command", command},
              {"status", o.status == 0 ? "ok" : "no"},
              {"exit_code", o.status},
              {"prec", prec},
              {"seed", seed},
              {"result", o.result}};
    out << j.dump(2) << "\n";
  } else {
    out << o.text << "\n";
  }
  return o.status;
}

}  // namespace cyclalg
