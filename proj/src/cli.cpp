#include "fieldred/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "fieldred/apps.hpp"
#include "fieldred/linset.hpp"
#include "fieldred/polar.hpp"
#include "fieldred/verify.hpp"

namespace fieldred {
namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

struct CommonFlags {
  long long q = 2;
  int t = 2;
  int r = 2;
  int n = 3;
  int k = 2;
  std::string alpha, gamma;
  unsigned long long seed = 0;
  std::string budget = "small";
  std::string format = "text";
  unsigned long long enum_budget = kDefaultEnumBudget;
};

nlohmann::json linset_record(const LinearSet& L) {
  nlohmann::json j;
  j["rank"] = L.rank();
  j["size"] = L.size();
  nlohmann::json hist;
  for (auto [w, x] : L.weight_histogram()) hist[std::to_string(w)] = x;
  j["weights"] = hist;
  j["scattered"] = is_scattered(L);
  j["club"] = is_club(L);
  auto wr = weight_distribution(L);
  j["identities_hold"] = wr.all();
  if (L.ctx.t() == 3 && L.ctx.r() % 2 == 0 && is_scattered(L) &&
      L.rank() == 3 * (L.ctx.r() / 2)) {
    try {
      Pseudoregulus pr = pseudoregulus_of(L);
      nlohmann::json p;
      p["secants"] = pr.secants.size();
      nlohmann::json spec;
      for (auto [hits, cnt] : pr.line_spectrum) spec[std::to_string(hits)] = cnt;
      p["line_spectrum"] = spec;
      p["transversals"] = {pr.t1.to_text(), pr.t2.to_text()};
      j["pseudoregulus"] = p;
    } catch (const std::exception& e) {
      j["pseudoregulus"] = std::string("unavailable: ") + e.what();
    }
  }
  return j;
}

FormSpec parse_form(const std::string& kind, const FieldTower& tw, int n,
                    const std::string& coeffs, int sigma_flag) {
  Space sp = make_space(tw, tw.h(), n);
  FormSpec f;
  f.space = sp;
  f.gram = Mat(n, Vec(n, 0));
  std::vector<uint32_t> entries;
  {
    std::stringstream ss(coeffs);
    std::string item;
    int depth = 0;
    std::string cur;
    for (char c : coeffs) {
      if (c == '[') ++depth;
      if (c == ']') --depth;
      if (c == ',' && depth == 0) {
        entries.push_back(tw.parse_element(cur));
        cur.clear();
      } else {
        cur += c;
      }
    }
    if (!cur.empty()) entries.push_back(tw.parse_element(cur));
  }
  if (kind == "quadratic") {
    f.kind = FormKind::Quadratic;
    if (static_cast<int>(entries.size()) != n * (n + 1) / 2)
      throw std::invalid_argument("quadratic form needs n(n+1)/2 coefficients (row-major upper triangle)");
    size_t idx = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) f.gram[i][j] = entries[idx++];
    return f;
  }
  if (static_cast<int>(entries.size()) != n * n)
    throw std::invalid_argument("sesquilinear form needs n^2 coefficients (row-major)");
  size_t idx = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) f.gram[i][j] = entries[idx++];
  f.kind = FormKind::Sesquilinear;
  if (kind == "hermitian") {
    if (tw.h() % 2) throw std::invalid_argument("hermitian forms need a square field order");
    f.sigma = tw.h() / 2;
  } else if (kind == "bilinear-symmetric" || kind == "alternating" ||
             kind == "pseudo-symplectic") {
    f.sigma = 0;
  } else if (kind == "sesquilinear") {
    f.sigma = sigma_flag;
  } else {
    throw std::invalid_argument("unknown form kind: " + kind);
  }
  return f;
}

StandardKind standard_kind_from(const std::string& s) {
  if (s == "hyperbolic") return StandardKind::Hyperbolic;
  if (s == "elliptic") return StandardKind::Elliptic;
  if (s == "parabolic") return StandardKind::Parabolic;
  if (s == "hermitian") return StandardKind::Hermitian;
  if (s == "alternating") return StandardKind::Alternating;
  if (s == "pseudo-symplectic") return StandardKind::PseudoSymplectic;
  throw std::invalid_argument("unknown standard kind: " + s);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact-arithmetic finite geometry toolkit"};
  app.require_subcommand(1);
  CommonFlags fl;

  // field ------------------------------------------------------------------
  auto* c_field = app.add_subcommand("field", "inspect a finite field tower");
  std::string field_spec = "2^2";
  std::string field_op, elt_a, elt_b;
  c_field->add_option("--spec", field_spec, "field spec, p^h or p^h:poly=c0,...,1");
  c_field->add_option("--op", field_op, "add|sub|mul|div");
  c_field->add_option("--a", elt_a, "left operand");
  c_field->add_option("--b", elt_b, "right operand");

  // reduce -----------------------------------------------------------------
  auto* c_reduce = app.add_subcommand("reduce", "field-reduce a subspace of PG(r-1,q^t)");
  std::string reduce_subspace;
  c_reduce->add_option("--r", fl.r)->required();
  c_reduce->add_option("--t", fl.t)->required();
  c_reduce->add_option("--q", fl.q)->required();
  c_reduce->add_option("--subspace", reduce_subspace, "rows ';'-separated, entries ','-separated")
      ->required();

  // spread -----------------------------------------------------------------
  auto* c_spread = app.add_subcommand("spread", "list the Desarguesian spread of PG(rt-1,q)");
  c_spread->add_option("--r", fl.r)->required();
  c_spread->add_option("--t", fl.t)->required();
  c_spread->add_option("--q", fl.q)->required();

  // segre ------------------------------------------------------------------
  auto* c_segre = app.add_subcommand("segre", "Segre variety membership and counts");
  int segre_l = 1, segre_k = 1;
  std::string segre_point_text;
  c_segre->add_option("--l", segre_l)->required();
  c_segre->add_option("--k", segre_k)->required();
  c_segre->add_option("--q", fl.q)->required();
  c_segre->add_option("--point", segre_point_text, "test one point instead of counting");

  // linset -----------------------------------------------------------------
  auto* c_linset = app.add_subcommand("linset", "analyze the linear set of a subspace");
  std::string linset_subspace;
  c_linset->add_option("--r", fl.r)->required();
  c_linset->add_option("--t", fl.t)->required();
  c_linset->add_option("--q", fl.q)->required();
  c_linset->add_option("--subspace", linset_subspace, "subspace of PG(rt-1,q)")->required();
  c_linset->add_option("--format", fl.format, "text|json");

  // polar ------------------------------------------------------------------
  auto* c_polar = app.add_subcommand("polar", "classify and reduce forms");
  c_polar->require_subcommand(1);
  auto* c_classify = c_polar->add_subcommand("classify", "classify an explicit form");
  std::string form_kind = "quadratic", form_field = "2", form_coeffs;
  int form_n = 2, form_sigma = 0;
  c_classify->add_option("--kind", form_kind,
                         "quadratic|bilinear-symmetric|alternating|hermitian|pseudo-symplectic");
  c_classify->add_option("--field", form_field, "field spec")->required();
  c_classify->add_option("--n", form_n, "vector dimension")->required();
  c_classify->add_option("--coeffs", form_coeffs, "coefficient list")->required();
  c_classify->add_option("--sigma", form_sigma, "companion exponent for raw sesquilinear input");

  auto* c_preduce = c_polar->add_subcommand("reduce", "trace-compose a standard form");
  std::string pr_kind = "parabolic";
  c_preduce->add_option("--kind", pr_kind)->required();
  c_preduce->add_option("--q", fl.q)->required();
  c_preduce->add_option("--t", fl.t)->required();
  c_preduce->add_option("--r", fl.r)->required();
  c_preduce->add_option("--alpha", fl.alpha)->required();
  c_preduce->add_option("--gamma", fl.gamma);

  // blocking ---------------------------------------------------------------
  auto* c_blocking = app.add_subcommand("blocking", "linear and cone blocking sets");
  bool cone = false;
  std::string base_kind = "line";
  c_blocking->add_option("--n", fl.n)->required();
  c_blocking->add_option("--t", fl.t)->required();
  c_blocking->add_option("--q", fl.q)->required();
  c_blocking->add_option("--k", fl.k)->required();
  c_blocking->add_flag("--cone", cone, "use the cone construction");
  c_blocking->add_option("--base", base_kind, "line|baer (cone base)");

  // semifield ----------------------------------------------------------------
  auto* c_semifield = app.add_subcommand("semifield", "check a semifield table");
  std::string builtin, table_file;
  long long subfield_order = 0;
  c_semifield->add_option("--builtin", builtin, "gf4|gf8|gf9|dickson81");
  c_semifield->add_option("--file", table_file, "table file: 'p m' then p^m rows");
  c_semifield->add_option("--subfield", subfield_order,
                          "central subfield order for the spread set (default p)");

  // verify -------------------------------------------------------------------
  auto* c_verify = app.add_subcommand("verify", "run a verification suite");
  std::string suite = "all";
  c_verify->add_option("--suite", suite, "suite name or 'all'");
  c_verify->add_option("--budget", fl.budget, "small|medium|large")
      ->envname("FIELDRED_BUDGET");
  c_verify->add_option("--seed", fl.seed, "seed for sampled checks");
  c_verify->add_option("--format", fl.format, "text|json");
  c_verify->add_option("--enum-budget", fl.enum_budget, "subspace enumeration cap");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      out << app.help();
      return kExitOk;
    }
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*c_field) {
      const FieldTower& tw = FieldTower::parse_spec(field_spec);
      if (!field_op.empty()) {
        uint32_t a = tw.parse_element(elt_a), b = tw.parse_element(elt_b);
        uint32_t r;
        if (field_op == "add") r = tw.add(a, b);
        else if (field_op == "sub") r = tw.sub(a, b);
        else if (field_op == "mul") r = tw.mul(a, b);
        else if (field_op == "div") r = tw.div(a, b);
        else throw std::invalid_argument("unknown op: " + field_op);
        out << tw.format(r) << "\n";
        return kExitOk;
      }
      out << "order " << tw.order() << " = " << tw.p() << "^" << tw.h() << "\n";
      out << "modulus";
      for (auto c : tw.modulus()) out << " " << c;
      out << " (low to high)\n";
      out << "generator " << tw.format(tw.generator()) << "\n";
      out << "subfield degrees";
      for (int d : tw.subfield_degrees()) out << " " << d;
      out << "\n";
      return kExitOk;
    }

    if (*c_reduce) {
      ReductionContext ctx(fl.r, fl.t, fl.q);
      ProjSubspace s = ProjSubspace::from_text(ctx.source(), reduce_subspace);
      out << ctx.reduce(s).to_text() << "\n";
      return kExitOk;
    }

    if (*c_spread) {
      ReductionContext ctx(fl.r, fl.t, fl.q);
      Spread sp = desarguesian_spread(ctx);
      for (const auto& e : sp.elements()) out << e.to_text() << "\n";
      err << "elements " << sp.size() << "; partition verified\n";
      return kExitOk;
    }

    if (*c_segre) {
      long long p;
      int d;
      factor_prime_power(fl.q, p, d);
      const FieldTower& tw = FieldTower::get(p, d);
      Space sp = make_space(tw, d, (segre_l + 1) * (segre_k + 1));
      if (!segre_point_text.empty()) {
        ProjSubspace pt = ProjSubspace::from_text(sp, segre_point_text);
        bool on = is_on_segre(sp, pt.rows().at(0), segre_l, segre_k);
        out << (on ? "on-variety" : "off-variety") << "\n";
        return on ? kExitOk : kExitCheckFailed;
      }
      unsigned long long count = 0;
      for (const auto& ppt : enumerate_points(sp))
        if (is_on_segre(sp, ppt, segre_l, segre_k)) ++count;
      out << count << "\n";
      return kExitOk;
    }

    if (*c_linset) {
      ReductionContext ctx(fl.r, fl.t, fl.q);
      ProjSubspace U = ProjSubspace::from_text(ctx.target(), linset_subspace);
      LinearSet L = make_linear_set(ctx, U);
      nlohmann::json j = linset_record(L);
      if (fl.format == "json") {
        out << j.dump(2) << "\n";
      } else {
        out << "rank " << j["rank"] << "\nsize " << j["size"] << "\nscattered "
            << (is_scattered(L) ? "yes" : "no") << "\nclub " << (is_club(L) ? "yes" : "no")
            << "\nweights " << j["weights"].dump() << "\n";
        if (j.contains("pseudoregulus")) out << "pseudoregulus " << j["pseudoregulus"].dump() << "\n";
      }
      return kExitOk;
    }

    if (*c_classify) {
      const FieldTower& tw = FieldTower::parse_spec(form_field);
      FormSpec f = parse_form(form_kind, tw, form_n, form_coeffs, form_sigma);
      PolarType ty = classify(f);
      out << "label " << to_string(ty.label) << "\n";
      out << "witt " << ty.witt << "\n";
      if (ty.sign) out << "sign " << (ty.sign > 0 ? "+1" : "-1") << "\n";
      if (f.kind == FormKind::Quadratic) out << "zeros " << count_projective_zeros(f) << "\n";
      return kExitOk;
    }

    if (*c_preduce) {
      StandardKind kind = standard_kind_from(pr_kind);
      ReductionContext ctx(fl.r, fl.t, fl.q);
      const FieldTower& tw = ctx.tower();
      uint32_t alpha = tw.parse_element(fl.alpha);
      std::optional<uint32_t> gamma;
      if (!fl.gamma.empty()) gamma = tw.parse_element(fl.gamma);
      FormSpec f = standard_form(kind, fl.r, ctx.source(), gamma);
      PolarLabel pred = predicted_type(kind, ctx, alpha, gamma);
      PolarLabel got = classify(trace_compose(ctx, f, alpha)).label;
      out << "predicted " << to_string(pred) << "\n";
      out << "computed " << to_string(got) << "\n";
      out << "agreement " << (pred == got ? "yes" : "no") << "\n";
      return pred == got ? kExitOk : kExitCheckFailed;
    }

    if (*c_blocking) {
      if (!cone) {
        auto res = linear_blocking_set(fl.n, fl.t, fl.q, fl.k, fl.enum_budget);
        out << "rank " << res.linear_set.rank() << "\nsize " << res.linear_set.size()
            << "\nblocking " << (res.report.blocking ? "yes" : "no") << "\nminimal "
            << (res.report.minimal ? "yes" : "no") << "\nsmall "
            << (res.report.small ? "yes" : "no") << "\nredei "
            << (res.report.redei ? "yes" : "no") << "\n";
        return res.report.blocking && res.report.minimal ? kExitOk : kExitCheckFailed;
      }
      ReductionContext ctx(fl.n, fl.t, fl.q);
      Space tgt = ctx.target();
      int vdim = fl.n * fl.t - fl.k * fl.t - 2;
      Mat vrows;
      for (int i = 0; i <= vdim; ++i) {
        Vec e(tgt.n, 0);
        e[i] = 1;
        vrows.push_back(std::move(e));
      }
      ProjSubspace vertex = ProjSubspace::canonical(tgt, vrows);
      Mat prows;
      for (int i = 0; i < 3; ++i) {
        Vec e(tgt.n, 0);
        e[tgt.n - 3 + i] = 1;
        prows.push_back(std::move(e));
      }
      ProjSubspace plane = ProjSubspace::canonical(tgt, prows);
      Space plane2 = make_space(*tgt.tower, tgt.field_deg, 3);
      std::vector<Vec> base;
      if (base_kind == "line") {
        for (const auto& p : enumerate_points(make_space(*tgt.tower, tgt.field_deg, 2))) {
          Vec v = p;
          v.push_back(0);
          base.push_back(std::move(v));
        }
      } else if (base_kind == "baer") {
        int half = tgt.field_deg / 2;
        if (half == 0 || tgt.field_deg % 2)
          throw std::invalid_argument("baer base needs a square field order");
        base = canonical_subgeometry_points(plane2, half);
      } else {
        throw std::invalid_argument("unknown base kind: " + base_kind);
      }
      auto res = cone_blocking_set(ctx, vertex, plane, base, fl.k, fl.enum_budget);
      out << "cone points " << res.cone_points.size() << "\nblocking points "
          << res.blocking_points.size() << "\nblocking "
          << (res.report.blocking ? "yes" : "no") << "\nminimal "
          << (res.report.minimal ? "yes" : "no") << "\n";
      return res.report.blocking && res.report.minimal ? kExitOk : kExitCheckFailed;
    }

    if (*c_semifield) {
      SemifieldTable tbl;
      if (!table_file.empty()) {
        std::ifstream in(table_file);
        if (!in) throw std::invalid_argument("cannot open " + table_file);
        tbl = SemifieldTable::parse(in);
      } else if (builtin == "gf4") {
        tbl = SemifieldTable::from_field(FieldTower::get(2, 2));
      } else if (builtin == "gf8") {
        tbl = SemifieldTable::from_field(FieldTower::get(2, 3));
      } else if (builtin == "gf9") {
        tbl = SemifieldTable::from_field(FieldTower::get(3, 2));
      } else if (builtin == "dickson81") {
        tbl = SemifieldTable::dickson81();
      } else {
        throw std::invalid_argument("need --builtin or --file");
      }
      auto rep = check_semifield(tbl);
      out << "axioms " << (rep.pass() ? "pass" : "FAIL") << "\n";
      out << "identity " << rep.identity << "\n";
      out << "|Nl| " << rep.left_nucleus.size() << "  |Nm| " << rep.middle_nucleus.size()
          << "  |Nr| " << rep.right_nucleus.size() << "  |N| " << rep.nucleus.size() << "  |C| "
          << rep.commutative_center.size() << "  |Z| " << rep.center.size() << "\n";
      out << "nuclei are fields " << (rep.nuclei_are_fields ? "yes" : "no") << "\n";
      out << "proper " << (rep.proper ? "yes" : "no") << "\n";
      if (!rep.pass()) {
        if (rep.zero_divisor)
          out << "zero divisor (" << rep.zero_divisor->first << ","
              << rep.zero_divisor->second << ")\n";
        return kExitCheckFailed;
      }
      long long f = subfield_order ? subfield_order : tbl.p;
      auto sp = semifield_spread(tbl, f);
      out << "spread components " << sp.component_count << " partition "
          << (sp.partition_ok ? "ok" : "FAIL") << " invertible "
          << (sp.endomorphisms_invertible ? "yes" : "no") << "\n";
      out << "L(S): rank " << sp.rank << " size " << sp.linear_set.size() << " over PG("
          << sp.l * sp.l - 1 << "," << sp.left_nucleus_order << ")\n";
      return sp.partition_ok && sp.endomorphisms_invertible ? kExitOk : kExitCheckFailed;
    }

    if (*c_verify) {
      VerifyOptions opts;
      opts.budget = budget_from_string(fl.budget);
      opts.seed = fl.seed;
      opts.enum_budget = fl.enum_budget;
      std::vector<std::string> names =
          (suite == "all") ? suite_names() : std::vector<std::string>{suite};
      bool any_fail = false, all_skipped = true;
      std::string joined;
      for (const auto& name : names) {
        VerificationReport rep = run_suite(name, opts);
        any_fail |= !rep.all_passed();
        for (const auto& c : rep.checks)
          if (c.status != CheckStatus::SkippedBudget) all_skipped = false;
        if (fl.format == "json") {
          joined += rep.to_json() + "\n";
        } else {
          out << rep.to_text();
        }
        err << name << ": " << rep.wall_ms / 1000.0 << "s\n";
      }
      if (fl.format == "json") out << joined;
      if (any_fail) return kExitCheckFailed;
      if (all_skipped) return kExitBudget;
      return kExitOk;
    }
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << " (required " << e.required() << ")\n";
    return kExitBudget;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitCheckFailed;
  }
  err << "error: no subcommand\n";
  return kExitUsage;
}

}  // namespace fieldred
