// Command-line surface over the T-space library: membership with
// replayable certificates, coverage checks, separating functionals,
// canonical-form reduction, derivation-script replay, truncated closure
// dimensions and the verification suite. All subcommands print JSON.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "tspace/replay.hpp"
#include "tspace/verify.hpp"

using namespace tspace;

namespace {

#ifndef TSPACE_SCRIPT_DIR
#define TSPACE_SCRIPT_DIR "scripts"
#endif

std::string slurp_arg(const std::string& arg) {
  if (!arg.empty() && arg[0] == '@') {
    std::ifstream in(arg.substr(1));
    if (!in) fail(Errc::parse_error, "cannot open " + arg.substr(1));
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
    return text;
  }
  return arg;
}

TSpaceDesc resolve_space(const std::string& names, const FieldSpec& spec) {
  std::vector<std::string> parts;
  size_t start = 0;
  std::string seps = "+,";
  for (size_t i = 0; i <= names.size(); ++i) {
    if (i == names.size() || seps.find(names[i]) != std::string::npos) {
      if (i > start) parts.push_back(names.substr(start, i - start));
      start = i + 1;
    }
  }
  if (parts.empty()) fail(Errc::bad_params, "no space named");
  std::optional<TSpaceDesc> acc;
  for (const auto& n : parts) {
    TSpaceDesc d;
    if (n.rfind("custom:", 0) == 0) {
      std::ifstream in(n.substr(7));
      if (!in) fail(Errc::parse_error, "cannot open " + n.substr(7));
      Json j = Json::parse(in);
      d = custom_space(n, spec, j.at("generators").get<std::vector<std::string>>());
    } else {
      d = build_family(n, spec);
    }
    acc = acc ? sum_families(*acc, d) : d;
  }
  return *acc;
}

void emit(const Json& j, const std::string& json_path) {
  std::string text = j.dump(2);
  std::cout << text << "\n";
  if (!json_path.empty()) {
    std::ofstream out(json_path);
    out << text << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact T-space computations over small finite fields"};
  app.require_subcommand(1);

  uint32_t q_p = 2, q_m = 1;
  std::string space_arg, poly_arg, json_path;
  std::string cutoff_arg = "64";
  bool unitary = false;

  auto add_field_opts = [&](CLI::App* sub) {
    sub->add_option("--q,--p", q_p, "field characteristic p (use with --m for GF(p^m))");
    sub->add_option("--m", q_m, "extension degree");
    sub->add_option("--json", json_path, "also write the JSON output to this file");
  };

  // member
  auto* member = app.add_subcommand("member", "decide membership with a certificate");
  add_field_opts(member);
  member->add_option("--space", space_arg, "space name, e.g. W:1 or V:0+V:1")->required();
  member->add_option("--poly", poly_arg, "polynomial text or @file")->required();
  member->add_option("--cutoff", cutoff_arg, "echelon pivot cutoff");
  member->add_flag("--unitary", unitary, "decide in k[x] against a unitary space");

  // covers
  std::string spaces_arg;
  auto* covers = app.add_subcommand("covers", "does the (sum) space contain x?");
  add_field_opts(covers);
  covers->add_option("--spaces", spaces_arg, "comma- or plus-separated space names")->required();
  covers->add_option("--cutoff", cutoff_arg, "echelon pivot cutoff");

  // functional
  uint32_t period = 0;
  std::string target_arg;
  auto* functional = app.add_subcommand("functional", "solve for a separating functional");
  add_field_opts(functional);
  functional->add_option("--space", space_arg)->required();
  functional->add_option("--period", period, "period M of the weights")->required();
  functional->add_option("--target", target_arg, "target polynomial")->required();

  // reduce
  auto* reduce = app.add_subcommand("reduce", "canonical form modulo W1 or W2 over GF(2)");
  add_field_opts(reduce);
  reduce->add_option("--space", space_arg, "W1 or W2")->required();
  reduce->add_option("--poly", poly_arg)->required();

  // replay
  std::string script_path;
  auto* replay = app.add_subcommand("replay", "replay a derivation script");
  replay->add_option("--script", script_path, "script JSON path")->required();
  replay->add_option("--json", json_path);

  // dim
  uint32_t truncate = 8;
  std::string mode_arg = "quotient";
  auto* dim = app.add_subcommand("dim", "truncated closure dimension of a space");
  add_field_opts(dim);
  dim->add_option("--space", space_arg)->required();
  dim->add_option("--truncate", truncate, "degree bound D")->required();
  dim->add_option("--mode", mode_arg, "quotient (default) or fit");
  dim->add_flag("--unitary", unitary, "enumerate substitutions with constant terms");

  // verify
  std::string profile = "quick", scripts_dir = TSPACE_SCRIPT_DIR;
  auto* verify = app.add_subcommand("verify", "run the verification suite");
  verify->add_option("--profile", profile, "quick or full");
  verify->add_option("--scripts", scripts_dir, "directory with the shipped scripts");
  verify->add_option("--json", json_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 2;
  }

  try {
    if (member->parsed()) {
      auto spec = FieldSpec::make(q_p, q_m);
      BigInt cutoff(cutoff_arg);
      Json out;
      if (unitary || space_arg.rfind("U:", 0) == 0) {
        auto ud = build_unitary(space_arg, spec);
        auto f = parse_poly(spec, slurp_arg(poly_arg), Ambient::unitary);
        auto v = unitary_membership(ud, f, cutoff);
        out = verdict_to_json(spec, v, f);
      } else {
        auto d = resolve_space(space_arg, spec);
        auto f = parse_poly(spec, slurp_arg(poly_arg));
        auto v = decide_in_space(d, f, cutoff);
        // every emitted verdict ships with an independently checked witness
        auto ctx = span_context(d);
        if (v.is_member() && !validate_member_cert(ctx, *v.cert, f))
          fail(Errc::unsound_rule, "internal: certificate failed to replay");
        if (v.functional && !validate_functional(ctx, *v.functional, f))
          fail(Errc::unsound_rule, "internal: functional failed validation");
        if (v.gap &&
            !validate_pivot_gap(ctx, *v.gap, cutoff > v.gap->exponent ? cutoff : v.gap->exponent))
          fail(Errc::unsound_rule, "internal: pivot gap failed validation");
        out = verdict_to_json(spec, v, f);
      }
      out["space"] = space_arg;
      out["field"] = field_to_json(spec);
      emit(out, json_path);
      return 0;
    }
    if (covers->parsed()) {
      auto spec = FieldSpec::make(q_p, q_m);
      auto d = resolve_space(spaces_arg, spec);
      auto v = covers_all(d, BigInt(cutoff_arg));
      SparsePoly x;
      x.add_term(spec, 1, spec.one());
      if (v.is_member() && !validate_member_cert(span_context(d), *v.cert, x))
        fail(Errc::unsound_rule, "internal: certificate failed to replay");
      Json out = verdict_to_json(spec, v, x);
      out["space"] = d.name;
      out["covers"] = v.is_member();
      out["field"] = field_to_json(spec);
      emit(out, json_path);
      return 0;
    }
    if (functional->parsed()) {
      auto spec = FieldSpec::make(q_p, q_m);
      auto d = resolve_space(space_arg, spec);
      auto target = parse_poly(spec, slurp_arg(target_arg));
      auto ctx = span_context(d);
      auto fn = solve_periodic_functional(ctx, period, target);
      Json out;
      out["space"] = d.name;
      out["period"] = period;
      out["target"] = poly_to_json(spec, target);
      if (fn) {
        out["found"] = true;
        out["functional"] = functional_to_json(spec, *fn);
        out["validated"] = validate_functional(ctx, *fn, target);
      } else {
        out["found"] = false;
      }
      emit(out, json_path);
      return 0;
    }
    if (reduce->parsed()) {
      auto spec = FieldSpec::make(2, 1);
      RewriteTarget which;
      if (space_arg == "W1" || space_arg == "W:1")
        which = RewriteTarget::W1;
      else if (space_arg == "W2" || space_arg == "W:2")
        which = RewriteTarget::W2;
      else
        fail(Errc::bad_params, "reduce expects --space W1 or W2");
      auto sys = build_rules(which, spec);
      auto f = parse_poly(spec, slurp_arg(poly_arg));
      auto red = reduce_canonical(sys, f);
      Json out;
      out["space"] = sys.target;
      out["input"] = to_string(spec, f);
      out["canonical"] = to_string(spec, red.canonical);
      out["member"] = red.canonical.is_zero();
      out["certificate"] = combo_to_json(spec, red.membership);
      // the certificate proves input - canonical lies in the space
      out["certificate_checks"] =
          replay_combo(span_context(sys.space), red.membership) == sub(spec, f, red.canonical);
      emit(out, json_path);
      return 0;
    }
    if (replay->parsed()) {
      auto script = load_script(script_path);
      auto rep = run_script(script);
      Json out = report_to_json(script.field, rep);
      out["script"] = script.name;
      emit(out, json_path);
      return rep.pass ? 0 : 1;
    }
    if (dim->parsed()) {
      auto spec = FieldSpec::make(q_p, q_m);
      auto d = resolve_space(space_arg, spec);
      TruncMode mode = mode_arg == "fit" ? TruncMode::exact : TruncMode::quotient;
      auto gens = closure_generators(d, truncate);
      if (unitary) {
        std::vector<SparsePoly> ugens;
        for (const auto& g : gens) {
          SparsePoly u(Ambient::unitary);
          for (const auto& [e, c] : g.terms()) u.add_term(spec, e, c);
          ugens.push_back(std::move(u));
        }
        gens = std::move(ugens);
      }
      TruncatedClosure cl(spec, gens, truncate, mode, unitary);
      Json out;
      out["space"] = d.name;
      out["truncate"] = truncate;
      out["mode"] = mode_arg == "fit" ? "fit" : "quotient";
      out["dimension"] = cl.dimension();
      Json basis = Json::array();
      for (const auto& row : cl.basis_polys(spec)) basis.push_back(to_string(spec, row));
      out["basis"] = std::move(basis);
      emit(out, json_path);
      return 0;
    }
    if (verify->parsed()) {
      auto rep = verify_suite(profile, scripts_dir);
      for (const auto& c : rep.checks)
        std::cerr << c.id << " " << (c.pass ? "PASS" : "FAIL") << "  " << c.title << " ["
                  << c.params << "] " << (int)c.wall_ms << "ms"
                  << (c.detail.empty() ? "" : "  -- " + c.detail) << "\n";
      emit(verification_report_to_json(rep), json_path);
      return rep.all_pass ? 0 : 1;
    }
  } catch (const Error& e) {
    Json out;
    out["error"] = e.what();
    std::cout << out.dump(2) << "\n";
    return 2;
  } catch (const std::exception& e) {
    Json out;
    out["error"] = e.what();
    std::cout << out.dump(2) << "\n";
    return 2;
  }
  return 2;
}
