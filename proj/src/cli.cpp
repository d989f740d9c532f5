#include "dgla/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <random>
#include <sstream>

#include "dgla/cell_models.hpp"

namespace dgla {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string target;  // model selector, eval kind or verify suite
  std::string model;
  std::optional<int> n;
  std::optional<int> order;
  std::string variant = "symmetric";
  std::string spec;
  std::string map;
  std::string emit = "json";
  std::string in;
};

int default_order(const std::string& model) { return model == "cube" || model == "polyhedron" ? 2 : 3; }

json read_json_file(const std::string& path) {
  if (path == "-") return json::parse(std::cin);
  std::ifstream f(path);
  if (!f) throw UsageError("cannot open '" + path + "'");
  return json::parse(f);
}

struct Built {
  std::shared_ptr<const Model> model;
  std::optional<CubeMorphism> cube;
};

Built build_model(const std::string& selector, const Options& o) {
  const int order = o.order.value_or(default_order(selector));
  if (order < 0) throw UsageError("--order must be non-negative");
  Built out;
  if (selector == "interval") {
    out.model = std::make_shared<Model>(interval_model(order));
  } else if (selector == "bigon") {
    out.model = std::make_shared<Model>(bigon_model(order));
  } else if (selector == "banana") {
    if (!o.n) throw UsageError("banana requires --n");
    if (*o.n < 2) throw UsageError("banana requires --n >= 2");
    if (o.variant == "at-a") {
      out.model = std::make_shared<Model>(banana_model_at_a(*o.n, order));
    } else if (o.variant == "symmetric") {
      out.model = std::make_shared<Model>(banana_model_symmetric(*o.n, order));
    } else {
      throw UsageError("--variant must be at-a or symmetric");
    }
  } else if (selector == "cube") {
    out.cube = cube_morphism(order);
    out.model = out.cube->target;
  } else if (selector == "polyhedron") {
    if (o.spec.empty()) throw UsageError("polyhedron requires --spec");
    out.model = std::make_shared<Model>(polyhedron_model(PolyhedronSpec::from_json(read_json_file(o.spec)), order));
  } else {
    throw UsageError("unknown model '" + selector + "'");
  }
  return out;
}

void emit_model(const Model& m, const Options& o, std::ostream& out) {
  if (o.emit == "json") {
    out << m.to_json().dump(2) << '\n';
    return;
  }
  out << m.name() << " (maxOrder " << m.max_order() << ")\n";
  for (Generator g : m.generators()) out << "d" << g.name() << " = " << m.diff(g).to_string() << '\n';
}

// ---------------------------------------------------------------- eval

json eval(const Options& o) {
  const int order = o.order.value_or(3);
  if (order < 0) throw UsageError("--order must be non-negative");
  json result;
  result["kind"] = o.target;
  result["order"] = order;
  if (o.target == "q") {
    const OperatorPoly q = extract_Q(std::max(order, 1));
    result["result"] = q.to_json();
    result["text"] = q.to_string();
    return result;
  }
  if (o.in.empty()) throw UsageError("eval " + o.target + " requires --in");
  const json input = read_json_file(o.in);

  std::shared_ptr<const Model> context;
  if (input.contains("model")) {
    context = std::make_shared<Model>(Model::from_json(input.at("model")));
  } else if (!o.model.empty()) {
    Options mo = o;
    mo.order = std::max(order, o.order.value_or(order));
    context = build_model(o.model, mo).model;
  }
  GeneratorTable table;
  if (context) table = GeneratorTable(context->generators());
  if (input.contains("generators")) {
    const GeneratorTable declared = generators_from_json(input.at("generators"));
    for (Generator g : declared.generators()) table.add(g);
  }
  std::vector<LieElement> args;
  for (const auto& a : input.at("args")) args.push_back(element_from_json(a, table));
  auto need = [&](std::size_t k) {
    if (args.size() != k) throw UsageError("eval " + o.target + " takes " + std::to_string(k) + " arguments");
  };

  LieElement value;
  if (o.target == "bch") {
    if (args.empty()) throw UsageError("eval bch takes at least one argument");
    value = bch_multi(args, order);
  } else if (o.target == "mu2") {
    need(2);
    value = mu2(args[0], args[1], order);
  } else if (o.target == "mun") {
    if (args.empty()) throw UsageError("eval mun takes at least one argument");
    value = mun(args, order);
  } else if (o.target == "expad") {
    need(2);
    value = exp_ad(args[0], args[1], order);
  } else if (o.target == "flow") {
    need(2);
    if (!context) throw UsageError("eval flow needs a model (--model or a \"model\" key) for the differential");
    if (order > context->max_order()) throw OrderCapError("order exceeds the model's maxOrder");
    value = flow(args[0], args[1], context->differential(), order);
  } else {
    throw UsageError("unknown eval kind '" + o.target + "'");
  }
  result["result"] = element_to_json(value);
  result["text"] = value.to_string();
  return result;
}

// ---------------------------------------------------------------- verify

/// Randomised BCH and flow properties on two vertices joined by three edges.
Report bch_properties(int order) {
  Report r{"bchprops", true, {}};
  const int len = order + 1;
  const Generator a = Generator::make("#pa", -1), b = Generator::make("#pb", -1);
  const AssocSeries A = AssocSeries::generator(a, len), B = AssocSeries::generator(b, len);
  Differential d;
  d.set(a, commutator(A, A) * Rational(-1, 2));
  d.set(b, commutator(B, B) * Rational(-1, 2));
  std::vector<AssocSeries> edges;
  for (int i = 1; i <= 3; ++i) {
    edges.push_back(AssocSeries::generator(Generator::make("#pe" + std::to_string(i), 0), len));
    d.set(Generator::make("#pe" + std::to_string(i), 0), interval_diff(edges.back(), A, B));
  }
  std::mt19937 rng(7);
  auto coeff = [&] { return ratio(static_cast<long>(rng() % 9) - 4, 1 + static_cast<long>(rng() % 3)); };
  auto random_even = [&] {
    AssocSeries x(len);
    for (const auto& e : edges) x += e * coeff();
    x += commutator(edges[rng() % 3], edges[rng() % 3]) * coeff();
    return x;
  };
  auto check = [&](bool ok, const std::string& what, int trial) {
    if (!ok) r.fail(Failure{what, "property fails on random case " + std::to_string(trial), std::nullopt, ""});
  };
  for (int trial = 0; trial < 50 && r.pass; ++trial) {
    const AssocSeries x = random_even(), y = random_even(), z = random_even();
    check(bch2(bch2(x, y), z) == bch2(x, bch2(y, z)), "bch associativity", trial);
    check(bch2(x, -x).is_zero(), "bch inverse", trial);
    check(exp_ad(y, exp_ad(x, A)) == exp_ad(bch2(y, x), A), "exp-ad group law", trial);
    const AssocSeries p = flow(x, A, d);
    check((d.apply(p) + commutator(p, p) * Rational(1, 2)).is_zero(), "flow preserves Maurer-Cartan", trial);
    check(flow(y, p, d) == flow(bch2(x, y), A, d), "flow composition", trial);
    const AssocSeries loop = bch2(edges[0], -edges[1 + trial % 2]) * coeff();
    check(flow(loop, A, d) == A, "twisted-closed elements fix the point", trial);
    const AssocSeries e = edges[static_cast<std::size_t>(trial % 3)];
    check(flow(e, A, d) == B, "edges flow a to b", trial);
    check(d.apply(exp_ad(-e, x)) + commutator(B, exp_ad(-e, x)) == exp_ad(-e, d.apply(x) + commutator(A, x)),
          "intertwining", trial);
  }
  return r;
}

json report_json(const std::vector<Report>& reports, const Options& o, int order) {
  json checks = json::array();
  bool pass = true;
  for (const auto& r : reports) {
    checks.push_back(r.to_json());
    pass = pass && r.pass;
  }
  json j;
  j["suite"] = o.target;
  if (!o.model.empty()) j["model"] = o.model;
  j["order"] = order;
  j["pass"] = pass;
  j["checks"] = checks;
  return j;
}

json verify(const Options& o) {
  const std::string& suite = o.target;
  if (suite == "bchprops") {
    const int order = o.order.value_or(4);
    if (order < 0 || order + 1 > kMaxWordLength) throw UsageError("--order out of range");
    return report_json({bch_properties(order)}, o, order);
  }
  if (suite == "identity6") {
    if (!o.n || *o.n < 2) throw UsageError("identity6 requires --n >= 2");
    const int order = o.order.value_or(3);
    const auto p = banana_P(*o.n, order);
    return report_json({check_loop_identity(p, order), check_cyclic_condition(p), check_reversal_condition(p)}, o,
                       order);
  }
  if (o.model.empty()) throw UsageError("verify " + suite + " requires --model");
  const Built built = build_model(o.model, o);
  const Model& m = *built.model;
  const int order = o.order.value_or(default_order(o.model));
  std::vector<Report> reports;
  if (suite == "dsquared") {
    reports.push_back(check_d_squared(m, order));
  } else if (suite == "mc") {
    for (Generator g : m.generators()) {
      if (g.degree() != -1) continue;
      Report r = check_mc(m, LieElement::generator(g), order);
      r.check = "mc:" + g.name();
      reports.push_back(r);
    }
  } else if (suite == "locality") {
    reports.push_back(check_locality(m));
  } else if (suite == "boundary") {
    reports.push_back(check_boundary(m));
  } else if (suite == "symmetry" || suite == "morphism") {
    if (suite == "morphism" && built.cube) {
      reports.push_back(check_morphism(built.cube->phi, order));
    } else {
      if (o.model != "banana") throw UsageError("verify " + suite + " applies to banana (with --map) or cube");
      if (o.map.empty()) throw UsageError("verify " + suite + " requires --map");
      const Morphism phi = banana_symmetry(built.model, parse_banana_symmetry(o.map));
      reports.push_back(suite == "symmetry" ? check_symmetry(m, phi, order) : check_morphism(phi, order));
    }
  } else {
    throw UsageError("unknown verify suite '" + suite + "'");
  }
  return report_json(reports, o, order);
}

void emit_report(const json& j, const Options& o, std::ostream& out) {
  if (o.emit == "json") {
    out << j.dump(2) << '\n';
    return;
  }
  for (const auto& c : j.at("checks")) {
    out << c.at("check").get<std::string>() << ": " << (c.at("pass").get<bool>() ? "pass" : "FAIL") << '\n';
    for (const auto& f : c.at("failures")) {
      out << "  " << f.at("subject").get<std::string>() << ": " << f.at("detail").get<std::string>();
      if (f.contains("component")) out << " at " << f.at("component").get<int>() << " brackets";
      if (f.contains("term")) out << ", e.g. " << f.at("term").get<std::string>();
      out << '\n';
    }
  }
}

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--n", o.n, "number of banana faces");
  cmd->add_option("--order", o.order, "bracket order");
  cmd->add_option("--variant", o.variant, "banana variant")->check(CLI::IsMember({"at-a", "symmetric"}));
  cmd->add_option("--spec", o.spec, "polyhedron shelling JSON");
  cmd->add_option("--emit", o.emit, "output format")->check(CLI::IsMember({"json", "text"}));
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Free DGLA models of cells"};
  app.name("dgla");
  app.require_subcommand(1);
  auto* build = app.add_subcommand("build", "build a model and print it");
  build->add_option("model", o.target, "interval | bigon | banana | cube | polyhedron")->required();
  add_common(build, o);
  auto* ev = app.add_subcommand("eval", "evaluate a series operation");
  ev->add_option("kind", o.target, "bch | mu2 | mun | flow | expad | q")->required();
  ev->add_option("--in", o.in, "input JSON: {\"generators\":[...], \"args\":[...], \"model\":{...}}");
  ev->add_option("--model", o.model, "model supplying generators and the differential");
  add_common(ev, o);
  auto* ver = app.add_subcommand("verify", "run a check suite");
  ver->add_option("suite", o.target, "dsquared | mc | locality | boundary | symmetry | morphism | bchprops | identity6")
      ->required();
  ver->add_option("--model", o.model, "model selector");
  ver->add_option("--map", o.map, "banana symmetry")->check(CLI::IsMember({"tau", "sigma", "iota"}));
  add_common(ver, o);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "dgla: " << e.what() << '\n';
    return 2;
  }

  if (const char* cap = std::getenv("DGLA_MAX_TERMS")) {
    try {
      set_max_terms(static_cast<std::size_t>(std::stoull(cap)));
    } catch (const std::exception&) {
      err << "dgla: DGLA_MAX_TERMS must be a positive integer\n";
      return 2;
    }
  }

  try {
    if (build->parsed()) {
      emit_model(*build_model(o.target, o).model, o, out);
      return 0;
    }
    if (ev->parsed()) {
      const json j = eval(o);
      if (o.emit == "json") {
        out << j.dump(2) << '\n';
      } else {
        out << j.at("text").get<std::string>() << '\n';
      }
      return 0;
    }
    const json j = verify(o);
    emit_report(j, o, out);
    return j.at("pass").get<bool>() ? 0 : 1;
  } catch (const UsageError& e) {
    err << "dgla: " << e.what() << '\n';
    return 2;
  } catch (const json::exception& e) {
    err << "dgla: malformed JSON: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "dgla: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace dgla
