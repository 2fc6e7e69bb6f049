#include "geomodal/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iostream>

#include "geomodal/accept.hpp"
#include "geomodal/io.hpp"

namespace geomodal {

namespace {

struct Emit {
  std::ostream& out;
  std::string format = "json";
  bool timing = false;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  void report(Json j, const std::string& text) {
    if (timing) {
      auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                    std::chrono::steady_clock::now() - start)
                    .count();
      j["timing_ms"] = ms;
    }
    if (format == "text")
      out << text << "\n";
    else
      out << j.dump(2) << "\n";
  }
};

Json names_of(const FinSpace& X, Mask m) {
  Json a = Json::array();
  for (int i = 0; i < X.size(); ++i)
    if (mask_has(m, i)) a.push_back(X.point_name(i));
  return a;
}

int env_max_points() {
  const char* s = std::getenv("GEOMODAL_MAX_POINTS");
  if (!s) return 0;
  try {
    return std::stoi(s);
  } catch (...) {
    throw ValidationError("GEOMODAL_MAX_POINTS must be numeric");
  }
}

int clamp_points(int requested) {
  int env = env_max_points();
  if (env > 0 && (requested <= 0 || requested > env)) return env;
  return requested;
}

Formula formula_option(const std::string& inline_text, const std::string& file) {
  if (!inline_text.empty() && !file.empty())
    throw ValidationError("both --formula and --formula-file given; pass one");
  if (!inline_text.empty()) return parse_formula(inline_text);
  if (!file.empty()) {
    std::ifstream in(file);
    if (!in) throw ValidationError("cannot open formula file '" + file + "'");
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    return parse_formula(text);
  }
  throw ValidationError("a formula is required (--formula or --formula-file)");
}

std::vector<std::pair<int, int>> parse_pairs(const GeomModel& L, const GeomModel& R,
                                             const std::string& spec) {
  // "x:y,u:v" over point names
  std::vector<std::pair<int, int>> out;
  std::size_t pos = 0;
  while (pos < spec.size()) {
    auto comma = spec.find(',', pos);
    std::string item = spec.substr(pos, comma == std::string::npos ? std::string::npos
                                                                   : comma - pos);
    auto colon = item.find(':');
    if (colon == std::string::npos)
      throw ValidationError("relation pairs look like leftPoint:rightPoint");
    auto x = L.space().point_index(item.substr(0, colon));
    auto y = R.space().point_index(item.substr(colon + 1));
    if (!x) throw ValidationError("unknown left point in '" + item + "'");
    if (!y) throw ValidationError("unknown right point in '" + item + "'");
    out.emplace_back(*x, *y);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

Signature signature_for(const FunctorPtr& T, const std::string& liftings) {
  if (liftings.empty()) return default_signature(T);
  Signature sig;
  std::size_t pos = 0;
  while (pos <= liftings.size()) {
    auto comma = liftings.find(',', pos);
    std::string name = liftings.substr(
        pos, comma == std::string::npos ? std::string::npos : comma - pos);
    sig.push_back(builtin_lifting(T, name));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return sig;
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"coalgebraic geometric modal logic toolbox"};
  app.require_subcommand(1);
  app.fallthrough();
  Emit emit{out};
  app.add_option("--output", emit.format, "json|text")->check(CLI::IsMember({"json", "text"}));
  app.add_flag("--timing", emit.timing, "include wall-clock timing in reports");

  // check
  auto* check = app.add_subcommand("check", "truth set of a formula in a model");
  std::string check_model, check_formula_text, check_formula_file;
  std::vector<std::string> check_code_files;
  check->add_option("--model", check_model)->required();
  check->add_option("--formula", check_formula_text);
  check->add_option("--formula-file", check_formula_file);
  check->add_option("--code-file", check_code_files,
                    "custom lifting code file (repeatable)");

  // equiv
  auto* equiv = app.add_subcommand("equiv", "modal equivalence of two points");
  std::string eq_model, eq_model2, eq_x, eq_y;
  equiv->add_option("--model", eq_model)->required();
  equiv->add_option("--model2", eq_model2, "second model (defaults to --model)");
  equiv->add_option("--x", eq_x)->required();
  equiv->add_option("--y", eq_y)->required();

  // bisim
  auto* bisim = app.add_subcommand("bisim", "bisimulation engines");
  std::string bi_left, bi_right, bi_kind = "lambda", bi_liftings, bi_pairs;
  bisim->add_option("--left", bi_left)->required();
  bisim->add_option("--right", bi_right)->required();
  bisim->add_option("--kind", bi_kind)->check(CLI::IsMember({"lambda", "am", "compare"}));
  bisim->add_option("--liftings", bi_liftings, "comma-separated lifting ids");
  bisim->add_option("--pairs", bi_pairs, "relation pairs x:y,u:v (for --kind am)");

  // lift
  auto* lift = app.add_subcommand("lift", "KKP lift of a set functor at a space");
  std::string lf_base, lf_liftings = "box,dia", lf_space;
  bool lf_check = false;
  lift->add_option("--base", lf_base)->required()->check(CLI::IsMember({"powerset", "monotone"}));
  lift->add_option("--liftings", lf_liftings);
  lift->add_option("--space", lf_space)->required();
  lift->add_flag("--check", lf_check, "also run the lift theorem checks");

  // present
  auto* present = app.add_subcommand("present", "monotone-neighbourhood presentations");
  std::string pr_frame, pr_system = "M";
  bool pr_directed = false;
  present->add_option("--frame", pr_frame)->required();
  present->add_option("--system", pr_system)->check(CLI::IsMember({"M", "Mprime"}));
  present->add_flag("--directed", pr_directed, "include the directed-join relation instances");

  // points
  auto* points = app.add_subcommand("points", "points of a presented frame");
  std::string pt_presentation;
  int pt_maxgen = 24;
  points->add_option("--presentation", pt_presentation, "file (default: stdin)");
  points->add_option("--max-generators", pt_maxgen);

  // dualize
  auto* dualize = app.add_subcommand("dualize", "pt/opn duality fragment");
  std::string du_space, du_frame;
  dualize->add_option("--space", du_space, "sobrify a space");
  dualize->add_option("--frame", du_frame, "points of a frame");

  // proofcheck
  auto* proofcheck = app.add_subcommand("proofcheck", "check a derivation file");
  std::string pc_derivation;
  proofcheck->add_option("--derivation", pc_derivation)->required();

  // soundness
  auto* soundness = app.add_subcommand("soundness", "one-step soundness sweep");
  std::string so_system = "monotone", so_functor = "dkh";
  int so_maxpoints = 2;
  soundness->add_option("--system", so_system);
  soundness->add_option("--functor", so_functor);
  soundness->add_option("--max-points", so_maxpoints);

  // quotient
  auto* quotient = app.add_subcommand("quotient", "finite theory quotient of models");
  std::vector<std::string> qu_models;
  std::string qu_liftings;
  quotient->add_option("--model", qu_models, "model file (repeatable)")->required();
  quotient->add_option("--liftings", qu_liftings);

  // accept
  auto* accept = app.add_subcommand("accept", "acceptance suite driver");
  std::string ac_suite = "all";
  int ac_maxpoints = 0;
  unsigned ac_seed = 7;
  accept->add_option("--suite", ac_suite);
  accept->add_option("--max-points", ac_maxpoints);
  accept->add_option("--seed", ac_seed);

  try {
    std::vector<const char*> argv;
    argv.push_back("geomodal");
    for (const auto& a : args) argv.push_back(a.c_str());
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    Json j;
    j["error"] = {{"kind", "usage"}, {"message", e.what()}};
    err << j.dump(2) << "\n";
    return 2;
  }

  try {
    if (*check) {
      GeomModel M = model_from_json(load_json_file(check_model));
      Formula f = formula_option(check_formula_text, check_formula_file);
      Signature sig = default_signature(M.coalg.functor);
      for (const auto& cf : check_code_files) {
        CustomCode cc = code_from_json(load_json_file(cf));
        if (cc.code.functor->name() != M.coalg.functor->name())
          throw ValidationError("code in '" + cf + "' is for functor " +
                                cc.code.functor->name() + ", model uses " +
                                M.coalg.functor->name());
        sig.push_back(lifting_from_code(cc.code, cc.id));
      }
      check_formula(f, sig);
      Mask t = truth_set(M, f, sig);
      Json j;
      j["command"] = "check";
      j["formula"] = print_formula(f);
      j["truth"] = names_of(M.space(), t);
      emit.report(j, j["truth"].dump());
      return 0;
    }
    if (*equiv) {
      GeomModel M = model_from_json(load_json_file(eq_model));
      GeomModel N = eq_model2.empty() ? M : model_from_json(load_json_file(eq_model2));
      auto x = M.space().point_index(eq_x);
      auto y = N.space().point_index(eq_y);
      if (!x) throw ValidationError("unknown point '" + eq_x + "'");
      if (!y) throw ValidationError("unknown point '" + eq_y + "'");
      Signature sig = default_signature(M.coalg.functor);
      bool v = modal_equiv(M, *x, N, *y, sig);
      Json j;
      j["command"] = "equiv";
      j["equivalent"] = v;
      emit.report(j, v ? "equivalent" : "not equivalent");
      return v ? 0 : 1;
    }
    if (*bisim) {
      GeomModel L = model_from_json(load_json_file(bi_left));
      GeomModel R = model_from_json(load_json_file(bi_right));
      if (L.coalg.functor->name() != R.coalg.functor->name())
        throw ValidationError("models have different functors");
      Signature sig = signature_for(L.coalg.functor, bi_liftings);
      Json j;
      j["command"] = "bisim";
      j["kind"] = bi_kind;
      if (bi_kind == "lambda") {
        Relation g = greatest_lambda_bisim(L, R, sig);
        Json pairs = Json::array();
        for (const auto& [x, y] : g.pairs)
          pairs.push_back(Json::array(
              {L.space().point_name(x), R.space().point_name(y)}));
        j["pairs"] = std::move(pairs);
        emit.report(j, std::to_string(g.pairs.size()) + " pairs");
        return 0;
      }
      if (bi_kind == "am") {
        Relation B{L, R, parse_pairs(L, R, bi_pairs)};
        AmSearch s = search_am_transition(B);
        j["status"] = s.status == AmSearch::Status::Found      ? "found"
                      : s.status == AmSearch::Status::NoneExists ? "none-exists"
                                                                 : "bound-hit";
        if (s.status == AmSearch::Status::Found) {
          const FinSpace& TB =
              L.coalg.functor->carrier(am_data(B).b_space).space;
          Json beta = Json::array();
          for (int b : s.beta) beta.push_back(TB.point_name(b));
          j["beta"] = std::move(beta);
        }
        emit.report(j, j["status"].get<std::string>());
        return s.status == AmSearch::Status::Found      ? 0
               : s.status == AmSearch::Status::NoneExists ? 1
                                                          : 3;
      }
      EquivComparison cmp = compare_equivalences(L, R, sig);
      Json lam = Json::array(), mod = Json::array(), beh = Json::array();
      for (const auto& [x, y] : cmp.lambda_bisim.pairs)
        lam.push_back(Json::array({L.space().point_name(x), R.space().point_name(y)}));
      for (const auto& [x, y] : cmp.modal)
        mod.push_back(Json::array({L.space().point_name(x), R.space().point_name(y)}));
      for (const auto& [x, y] : cmp.behavioural)
        beh.push_back(Json::array({L.space().point_name(x), R.space().point_name(y)}));
      j["lambda_bisim"] = std::move(lam);
      j["modal_equiv"] = std::move(mod);
      j["behavioural"] = std::move(beh);
      j["behavioural_determinate"] = cmp.behavioural_determinate;
      j["flags"] = {{"monotone", cmp.monotone},
                    {"scott", cmp.scott},
                    {"characteristic", cmp.characteristic},
                    {"strong", cmp.strong}};
      j["lambda_subset_modal"] = cmp.lambda_subset_modal;
      j["three_way_coincidence"] = cmp.three_way_coincidence;
      if (!cmp.detail.empty()) j["detail"] = cmp.detail;
      emit.report(j, std::string("coincidence: ") +
                         (cmp.three_way_coincidence ? "yes" : "no"));
      return 0;
    }
    if (*lift) {
      FinSpace X = space_from_json(load_json_file(lf_space));
      std::vector<std::string> names;
      std::size_t pos = 0;
      while (pos <= lf_liftings.size() && !lf_liftings.empty()) {
        auto comma = lf_liftings.find(',', pos);
        names.push_back(lf_liftings.substr(
            pos, comma == std::string::npos ? std::string::npos : comma - pos));
        if (comma == std::string::npos) break;
        pos = comma + 1;
      }
      FunctorPtr K = kkp_functor(lf_base, names);
      Json j;
      j["command"] = "lift";
      j["functor"] = K->name();
      j["space"] = space_to_json(kkp_space(K, X));
      if (lf_check) {
        LiftTheoremReport rep = check_lift_theorems(K, X);
        j["theorems"] = {{"characteristic", rep.characteristic},
                         {"scott", rep.lifted_scott},
                         {"congruence_trivial", rep.congruence_trivial},
                         {"t0", rep.output_t0}};
      }
      emit.report(j, std::to_string(kkp_space(K, X).size()) + " points");
      return 0;
    }
    if (*present) {
      FinFrame F = frame_from_json(load_json_file(pr_frame));
      Presentation P = pr_system == "M" ? present_M(F, pr_directed)
                                        : present_Mprime(F, pr_directed);
      Json j = presentation_to_json(P);
      emit.report(j, std::to_string(P.generators.size()) + " generators, " +
                         std::to_string(P.relations.size()) + " relations");
      return 0;
    }
    if (*points) {
      Json src;
      if (pt_presentation.empty()) {
        try {
          std::cin >> src;
        } catch (const std::exception& e) {
          throw ValidationError(std::string("presentation on stdin: ") + e.what());
        }
      } else {
        src = load_json_file(pt_presentation);
      }
      Presentation P = presentation_from_json(src);
      PresentationPoints pts = presentation_points(P, pt_maxgen);
      Json j;
      j["command"] = "points";
      j["space"] = space_to_json(pts.space);
      Json assigns;
      for (int p = 0; p < pts.space.size(); ++p) {
        Json a;
        for (std::size_t g = 0; g < P.generators.size(); ++g)
          a[P.generators[g]] = static_cast<bool>(pts.assignments[p][g]);
        assigns[pts.space.point_name(p)] = std::move(a);
      }
      j["assignments"] = std::move(assigns);
      emit.report(j, std::to_string(pts.space.size()) + " points");
      return 0;
    }
    if (*dualize) {
      if (du_space.empty() == du_frame.empty())
        throw ValidationError("pass exactly one of --space or --frame");
      Json j;
      j["command"] = "dualize";
      if (!du_space.empty()) {
        FinSpace X = space_from_json(load_json_file(du_space));
        SobrifyResult r = sobrify(X);
        j["sober"] = r.is_sober;
        j["space"] = space_to_json(r.sober_space);
        Json unit;
        for (int x = 0; x < X.size(); ++x)
          unit[X.point_name(x)] = r.sober_space.point_name(r.unit(x));
        j["unit"] = std::move(unit);
        emit.report(j, r.is_sober ? "sober" : "not sober");
        return 0;
      }
      FinFrame F = frame_from_json(load_json_file(du_frame));
      FramePoints pts = frame_points(F);
      j["space"] = space_to_json(pts.space);
      emit.report(j, std::to_string(pts.space.size()) + " points");
      return 0;
    }
    if (*proofcheck) {
      Derivation d = derivation_from_json(load_json_file(pc_derivation));
      DerivationCheck r = check_derivation(d);
      Json j;
      j["command"] = "proofcheck";
      j["ok"] = r.ok;
      if (!r.ok) {
        j["failed_node"] = r.failed_node;
        j["reason"] = r.reason;
      }
      emit.report(j, r.ok ? "ok" : "failed at node " + std::to_string(r.failed_node) +
                                       ": " + r.reason);
      return r.ok ? 0 : 1;
    }
    if (*soundness) {
      SoundnessReport rep = soundness_sweep(axiom_system(so_system),
                                            make_functor(so_functor),
                                            clamp_points(so_maxpoints));
      Json j;
      j["command"] = "soundness";
      j["coalgebras"] = rep.coalgebras;
      j["instances"] = rep.instances;
      Json vio = Json::array();
      for (const auto& v : rep.violations) {
        Json jv;
        jv["schema"] = v.schema;
        jv["space"] = v.space_desc;
        jv["substitution"] = v.substitution;
        jv["pair"] = v.premise_or_conclusion;
        vio.push_back(std::move(jv));
      }
      j["violations"] = std::move(vio);
      emit.report(j, std::to_string(rep.violations.size()) + " violations");
      return rep.violations.empty() ? 0 : 1;
    }
    if (*quotient) {
      std::vector<GeomModel> models;
      for (const auto& f : qu_models)
        models.push_back(model_from_json(load_json_file(f)));
      if (models.empty()) throw ValidationError("no models given");
      Signature sig = signature_for(models[0].coalg.functor, qu_liftings);
      TheoryQuotient tq = theory_quotient(models, sig);
      Json j;
      j["command"] = "quotient";
      j["ok"] = tq.ok;
      if (tq.ok) {
        j["quotient"] = model_to_json(tq.quotient);
        Json maps = Json::array();
        for (std::size_t k = 0; k < tq.theory_maps.size(); ++k) {
          Json m;
          for (int x = 0; x < models[k].space().size(); ++x)
            m[models[k].space().point_name(x)] =
                tq.quotient.space().point_name(tq.theory_maps[k](x));
          maps.push_back(std::move(m));
        }
        j["theory_maps"] = std::move(maps);
      } else {
        j["failure"] = tq.failure;
      }
      emit.report(j, tq.ok ? "ok" : tq.failure);
      return tq.ok ? 0 : 1;
    }
    if (*accept) {
      auto items = run_acceptance(ac_suite, clamp_points(ac_maxpoints), ac_seed);
      Json j;
      j["command"] = "accept";
      j["seed"] = ac_seed;
      Json arr = Json::array();
      bool all = true;
      std::string text;
      for (const auto& item : items) {
        Json ji;
        ji["id"] = item.id;
        ji["title"] = item.title;
        ji["pass"] = item.pass;
        ji["detail"] = item.detail;
        arr.push_back(std::move(ji));
        all = all && item.pass;
        text += (item.pass ? "PASS " : "FAIL ") + item.id + ": " + item.title +
                " [" + item.detail + "]\n";
      }
      j["items"] = std::move(arr);
      j["all_pass"] = all;
      if (!text.empty()) text.pop_back();
      emit.report(j, text);
      return all ? 0 : 1;
    }
  } catch (const Error& e) {
    Json j;
    const char* kind = e.kind == Error::Kind::Validation ? "validation"
                       : e.kind == Error::Kind::Resource ? "resource"
                                                         : "internal";
    j["error"] = {{"kind", kind}, {"message", e.what()}};
    err << j.dump(2) << "\n";
    return e.kind == Error::Kind::Resource ? 3 : 2;
  }
  return 2;
}

}  // namespace geomodal
