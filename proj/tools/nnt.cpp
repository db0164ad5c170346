#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "nnt/json_io.hpp"

using namespace nnt;

namespace {

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  return Json::parse(in);
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

Group group_of(const std::string& which) {
  if (which == "so") return Group::so;
  if (which == "g") return Group::g;
  if (which == "h") return Group::h;
  return Group::sow;
}

Algebra algebra_of(const std::string& which) {
  if (which == "so") return Algebra::so;
  if (which == "g") return Algebra::g;
  return Algebra::h;
}

struct CheckArgs {
  std::string which;
  int n = 1;
  std::string file;
};

int run_check(bool algebra, const CheckArgs& a) {
  Mat x = mat_from_json(read_json_file(a.file));
  bool member = algebra ? in_algebra(x, a.n, algebra_of(a.which))
                        : in_group(x, a.n, group_of(a.which));
  emit({{"kind", algebra ? "algebra" : "group"},
        {"which", a.which},
        {"n", a.n},
        {"member", member}});
  return member ? 0 : 1;
}

struct NilpotentArgs {
  int n = 1;
  std::string eps;
  std::string file;
};

// verify reports failures gently; every other action requires a valid
// structure matrix and treats anything else as an input error.
int run_nilpotent(const std::string& action, const NilpotentArgs& a) {
  Mat nm = mat_from_json(read_json_file(a.file));
  std::optional<int> want;
  if (!a.eps.empty()) want = eps_from_string(a.eps);

  if (action == "verify") {
    Json out{{"n", a.n}};
    auto refuse = [&](const std::string& why) {
      out["valid"] = false;
      out["reason"] = why;
      emit(out);
      return 1;
    };
    if (auto why = structure_matrix_failure(a.n, nm)) return refuse(*why);
    NilpotentStructure s = from_matrix(a.n, nm);
    if (auto why = axiom_failure(s)) return refuse(*why);
    out["eps"] = eps_to_json(s.eps);
    if (want && s.eps != *want)
      return refuse("orientation is '" + eps_to_json(s.eps) + "'");
    out["valid"] = true;
    emit(out);
    return 0;
  }

  NilpotentStructure s = from_matrix(a.n, nm);
  if (want && s.eps != *want)
    throw std::invalid_argument("the structure orientation is '" + eps_to_json(s.eps) +
                                "', not '" + eps_to_json(*want) + "'");
  if (action == "frame") {
    emit(record_to_json(s));
  } else if (action == "theta") {
    emit(graded_to_json(theta_of(s)));
  } else if (action == "xi") {
    emit(mat_to_json(xi_vectors(s)));
  } else if (action == "dual") {
    emit(record_to_json(dual(s)));
  } else {
    emit(split_to_json(split(s)));
  }
  return 0;
}

struct FromThetaArgs {
  int n = 1;
  std::string subspace;
  std::string theta;
};

int run_from_theta(const FromThetaArgs& a) {
  Mat l = mat_from_json(read_json_file(a.subspace));
  GradedElement th = graded_from_json(read_json_file(a.theta), 4 * a.n);
  emit(record_to_json(from_theta(a.n, l, th)));
  return 0;
}

struct ConnArgs {
  int n = 1;
  std::string eps;
  std::string file;
};

ConnectionGauge load_gauge(const ConnArgs& a) {
  ConnectionGauge cg = gauge_from_json(read_json_file(a.file));
  if (cg.n != a.n)
    throw std::invalid_argument("--n is " + std::to_string(a.n) + " but the gauge has n = " +
                                std::to_string(cg.n));
  if (cg.eps != eps_from_string(a.eps))
    throw std::invalid_argument("--eps disagrees with the gauge file");
  return cg;
}

int predicate_exit(const char* key, const PredicateReport& p) {
  Json out{{key, p.ok}};
  if (!p.ok) out["witness"] = p.witness;
  emit(out);
  return p.ok ? 0 : 1;
}

int run_conn(const std::string& action, const ConnArgs& a) {
  ConnectionGauge cg = load_gauge(a);
  if (action == "curvature") {
    FormMat k = curvature(cg);
    Json grid = Json::array();
    for (std::size_t i = 0; i < k.rows(); ++i) {
      Json row = Json::array();
      for (std::size_t j = 0; j < k.cols(); ++j) row.push_back(kform_to_json(k.at(i, j)));
      grid.push_back(std::move(row));
    }
    emit({{"n", cg.n}, {"eps", eps_to_json(cg.eps)}, {"m", cg.vars()},
          {"curvature", std::move(grid)}, {"flat", k.is_zero()}});
    return 0;
  }
  if (action == "alpha") {
    emit(kform_to_json(alpha_form(cg)));
    return 0;
  }
  if (action == "walker") return predicate_exit("walker", walker_report(cg));
  if (action == "parallel") return predicate_exit("parallel", parallel_report(cg));

  // report: the check is metric compatibility; the rest is information.
  Json out{{"n", cg.n}, {"eps", eps_to_json(cg.eps)}, {"m", cg.vars()}};
  Json witnesses = Json::object();
  PredicateReport metric = metric_report(cg);
  out["metric"] = metric.ok;
  if (!metric.ok) {
    witnesses["metric"] = metric.witness;
    out["witnesses"] = std::move(witnesses);
    emit(out);
    return 1;
  }
  auto note = [&](const char* key, const PredicateReport& p) {
    out[key] = p.ok;
    if (!p.ok) witnesses[key] = p.witness;
  };
  note("flat", flat_report(cg));
  note("walker", walker_report(cg));
  note("both_walker", both_walker_report(cg));
  note("parallel", parallel_report(cg));
  note("lie_g", lie_g_report(cg));
  note("lie_h", lie_h_report(cg));
  out["xi_factorization"] = xi_factorizes(cg);
  out["alpha"] = kform_to_json(alpha_form(cg));
  if (!witnesses.empty()) out["witnesses"] = std::move(witnesses);
  emit(out);
  return 0;
}

struct ExampleArgs {
  std::string name;
  std::string params_file;
  std::string out_file;
  std::optional<std::uint64_t> seed;
  std::optional<int> samples;
};

int run_example_cmd(const ExampleArgs& a) {
  Json params = Json::object();
  if (!a.params_file.empty()) {
    params = read_json_file(a.params_file);
    if (!params.is_object())
      throw std::invalid_argument("the params file must hold a JSON object");
  }
  ExampleReport r = run_report(a.name, params, a.seed, a.samples);
  Json j = report_to_json(r);
  emit(j);
  if (!a.out_file.empty()) {
    std::ofstream out(a.out_file);
    if (!out) throw std::invalid_argument("cannot write " + a.out_file);
    out << j.dump(2) << "\n";
  }
  return r.all_pass() ? 0 : 1;
}

void add_n_option(CLI::App* cmd, int& n) {
  cmd->add_option("--n", n, "rank parameter of the 4n bundle")
      ->required()
      ->check(CLI::Range(1, 1 << 20));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact arithmetic for nilpotent structures on oriented neutral bundles"};
  app.require_subcommand(1);
  int rc = 0;

  CLI::App* check = app.add_subcommand("check", "membership in the structure groups");
  check->require_subcommand(1);
  CheckArgs gargs, aargs;
  CLI::App* group = check->add_subcommand("group", "test a matrix against SO, G, H or SO_W");
  group->add_option("--which", gargs.which, "group to test against")
      ->required()
      ->check(CLI::IsMember({"so", "g", "h", "sow"}));
  add_n_option(group, gargs.n);
  group->add_option("file", gargs.file, "matrix JSON file")->required();
  group->callback([&] { rc = run_check(false, gargs); });
  CLI::App* algebra = check->add_subcommand("algebra", "test a matrix against a Lie algebra");
  algebra->add_option("--which", aargs.which, "algebra to test against")
      ->required()
      ->check(CLI::IsMember({"so", "g", "h"}));
  add_n_option(algebra, aargs.n);
  algebra->add_option("file", aargs.file, "matrix JSON file")->required();
  algebra->callback([&] { rc = run_check(true, aargs); });

  CLI::App* nil = app.add_subcommand("nilpotent", "operations on a structure matrix N");
  nil->require_subcommand(1);
  NilpotentArgs nargs;
  const std::pair<const char*, const char*> actions[] = {
      {"verify", "check the nilpotent structure axioms"},
      {"frame", "construct an admissible frame record"},
      {"theta", "the two-vector Theta of N"},
      {"xi", "a basis of the image of N"},
      {"dual", "the dual structure record"},
      {"split", "the compatible triple I, J1, J2"},
  };
  for (const auto& [name, what] : actions) {
    CLI::App* sub = nil->add_subcommand(name, what);
    add_n_option(sub, nargs.n);
    sub->add_option("--eps", nargs.eps, "expected orientation sign")
        ->check(CLI::IsMember({"+", "-"}));
    sub->add_option("file", nargs.file, "matrix JSON file for N")->required();
    std::string action = name;
    sub->callback([&, action] { rc = run_nilpotent(action, nargs); });
  }
  FromThetaArgs fargs;
  CLI::App* ft = nil->add_subcommand("from-theta", "reconstruct N from a subspace and Theta");
  add_n_option(ft, fargs.n);
  ft->add_option("--subspace", fargs.subspace, "matrix JSON file whose columns span L")
      ->required();
  ft->add_option("--theta", fargs.theta, "two-vector JSON file")->required();
  ft->callback([&] { rc = run_from_theta(fargs); });

  CLI::App* conn = app.add_subcommand("conn", "predicates on a metric connection gauge");
  conn->require_subcommand(1);
  ConnArgs cargs;
  const std::pair<const char*, const char*> conn_actions[] = {
      {"curvature", "the curvature two-forms of omega"},
      {"walker", "the Walker block identities"},
      {"parallel", "omega Lambda_n = Lambda_n omega"},
      {"alpha", "the one-form alpha of omega"},
      {"report", "all predicates with witnesses"},
  };
  for (const auto& [name, what] : conn_actions) {
    CLI::App* sub = conn->add_subcommand(name, what);
    add_n_option(sub, cargs.n);
    sub->add_option("--eps", cargs.eps, "orientation sign of the gauge")
        ->required()
        ->check(CLI::IsMember({"+", "-"}));
    sub->add_option("file", cargs.file, "connection gauge JSON file")->required();
    std::string action = name;
    sub->callback([&, action] { rc = run_conn(action, cargs); });
  }

  CLI::App* example = app.add_subcommand("example", "worked examples and theorem suites");
  example->require_subcommand(1);
  ExampleArgs eargs;
  CLI::App* run = example->add_subcommand("run", "build an example and verify its claims");
  run->add_option("name", eargs.name, "example name; see the library documentation")
      ->required();
  run->add_option("--params", eargs.params_file, "JSON file of example parameters");
  run->add_option("--seed", eargs.seed, "seed for randomized suites");
  run->add_option("--samples", eargs.samples, "sample count for randomized suites")
      ->check(CLI::Range(1, 1 << 20));
  run->add_option("--out", eargs.out_file, "also write the report to this file");
  run->callback([&] { rc = run_example_cmd(eargs); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return rc;
}
