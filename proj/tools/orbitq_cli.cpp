// orbitq: evaluate quotient maps, compare orbits, sample inputs and run the
// verification suites. All input and output is JSON.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "orbitq/orbitq.hpp"
#include "orbitq/verify.hpp"

using namespace orbitq;

namespace {

constexpr int kExitParse = 2;
constexpr int kExitNumerical = 3;

struct Config {
  std::string field;
  std::optional<std::size_t> n;
  std::optional<std::size_t> k;
  double tol = 1e-9;
  std::size_t trials = 1000;
  std::uint64_t seed = 0;
  std::string suite = "all";
};

AnyPoint read_point(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return point_from_string(ss.str());
}

void check_shape(const Config& c, const AnyPoint& p, const std::string& path) {
  std::visit(
      [&](const auto& q) {
        if (!c.field.empty() && parse_field(c.field) != point_field(p))
          throw InvalidInput(path + ": field does not match --field");
        if (c.n && *c.n != q.n) throw InvalidInput(path + ": n does not match --n");
        if (c.k && *c.k != q.k) throw InvalidInput(path + ": k does not match --k");
      },
      p);
}

FieldTag required_field(const Config& c) {
  if (c.field.empty()) throw InvalidInput("--field is required");
  return parse_field(c.field);
}

std::size_t required(const std::optional<std::size_t>& v, const char* flag) {
  if (!v) throw InvalidInput(std::string(flag) + " is required");
  return *v;
}

void print(const json& j) { std::cout << j.dump() << '\n'; }

int cmd_eval(const Config& c, const std::string& path) {
  const AnyPoint p = read_point(path);
  check_shape(c, p, path);
  print(quotient_to_json(std::visit([](const auto& q) { return evaluate(q); }, p)));
  return 0;
}

int cmd_orbit_check(const Config& c, const std::string& path_a, const std::string& path_b) {
  const AnyPoint a = read_point(path_a);
  const AnyPoint b = read_point(path_b);
  check_shape(c, a, path_a);
  check_shape(c, b, path_b);
  if (a.index() != b.index()) throw InvalidInput("points are over different fields");
  return std::visit(
      [&](const auto& p) {
        using T = typename std::decay_t<decltype(p)>::Scalar;
        const auto& q = std::get<ReprPoint<T>>(b);
        if (p.n != q.n || p.k != q.k) throw InvalidInput("points have different shapes");
        const double distance = relative_quotient_distance(evaluate(p), evaluate(q));
        json cert;
        if (p.n > 0) {
          const auto sp = signature(p);
          const auto sq = signature(q);
          cert["signature_distance"] = signature_distance(sp, sq);
          cert["spectrum_distance"] = max_abs_difference(sp.spectrum, sq.spectrum);
          cert["moment_distance"] = max_abs_difference(sp.moments, sq.moments);
          cert["separated"] = signature_distance(sp, sq) > verify::kSignatureSeparation;
        } else {
          cert["signature_distance"] = 0.0;
          cert["separated"] = false;
        }
        json out;
        out["same_orbit"] = distance <= c.tol;
        out["distance"] = distance;
        out["certificates"] = cert;
        print(out);
        return 0;
      },
      a);
}

template <FieldScalar T>
json sample_of(const Config& c, const std::string& what, const std::string& orbit_of) {
  Rng rng(c.seed);
  if (what == "point") {
    if (!orbit_of.empty()) {
      const AnyPoint base = read_point(orbit_of);
      check_shape(c, base, orbit_of);
      const auto& p = std::get<ReprPoint<T>>(base);
      // k = 1 values are only SO-invariant, so stay inside the special group.
      const auto g = p.k == 1 ? random_special<T>(p.n, rng) : random_orthogonal<T>(p.n, rng);
      return point_to_json(act_point(g, p));
    }
    const std::size_t n = required(c.n, "--n");
    const std::size_t k = required(c.k, "--k");
    if ((k != 1 && k != 2) || n + k < 2) throw InvalidInput("need k in {1, 2} and n >= 2 - k");
    return point_to_json(random_point<T>(n, k, rng));
  }
  const std::size_t n = required(c.n, "--n");
  if (what == "group") return group_to_json(random_orthogonal<T>(n, rng));
  if (what == "special-group") return group_to_json(random_special<T>(n, rng));
  throw InvalidInput("sample target must be point, group or special-group");
}

int cmd_sample(Config c, const std::string& what, const std::string& orbit_of) {
  if (!orbit_of.empty() && c.field.empty()) c.field = to_string(point_field(read_point(orbit_of)));
  const json j = required_field(c) == FieldTag::Real ? sample_of<double>(c, what, orbit_of)
                                                     : sample_of<Complex>(c, what, orbit_of);
  print(j);
  return 0;
}

int cmd_verify(const Config& c, bool trials_given) {
  verify::SuiteOptions o;
  if (!c.field.empty()) o.fields = {parse_field(c.field)};
  o.n = c.n;
  o.k = c.k;
  if (trials_given) o.trials = c.trials;
  o.seed = c.seed;
  json reports = json::array();
  bool ok = true;
  for (const auto& s : verify::select_suites(c.suite)) {
    const auto r = s.run(o);
    ok = ok && r.passed();
    reports.push_back(verify::report_to_json(r));
  }
  json out;
  out["passed"] = ok;
  out["seed"] = c.seed;
  out["suites"] = reports;
  print(out);
  return ok ? 0 : 1;
}

int cmd_dims(const Config& c) {
  const std::size_t k = required(c.k, "--k");
  json out;
  out["dim_V"] = dim_V(required_field(c), k, required(c.n, "--n"));
  out["has_nu"] = k == 1;
  print(out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quotient maps for orthogonal and unitary group actions"};
  app.require_subcommand(1);
  app.fallthrough();

  Config c;
  app.add_option("--field", c.field, "R or C");
  app.add_option("--n", c.n, "dimension n");
  app.add_option("--k", c.k, "number of columns of B (1 or 2)");
  app.add_option("--tol", c.tol, "orbit-check tolerance on the relative quotient distance")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  auto* trials_opt = app.add_option("--trials", c.trials, "trials per configuration for verify")
                         ->capture_default_str()
                         ->check(CLI::PositiveNumber);
  app.add_option("--seed", c.seed, "random seed")->capture_default_str();
  app.add_option("--suite", c.suite, "verify suite name or all")->capture_default_str();

  std::string point_a, point_b, what, orbit_of;
  auto* eval = app.add_subcommand("eval", "print the quotient value of a point");
  eval->add_option("point", point_a, "point JSON file")->required();
  auto* check = app.add_subcommand("orbit-check", "decide whether two points share an orbit");
  check->add_option("a", point_a, "first point JSON file")->required();
  check->add_option("b", point_b, "second point JSON file")->required();
  auto* sample = app.add_subcommand("sample", "sample a point or a group element");
  sample->add_option("what", what, "point, group or special-group")->required();
  sample->add_option("--orbit-of", orbit_of, "sample a point from the orbit of this point file");
  auto* verify = app.add_subcommand("verify", "run verification suites");
  auto* dims = app.add_subcommand("dims", "print dim V and whether nu is present");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitParse;
  }

  try {
    if (*eval) return cmd_eval(c, point_a);
    if (*check) return cmd_orbit_check(c, point_a, point_b);
    if (*sample) return cmd_sample(c, what, orbit_of);
    if (*verify) return cmd_verify(c, trials_opt->count() > 0);
    if (*dims) return cmd_dims(c);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitParse;
  } catch (const InvalidInput& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kExitParse;
  } catch (const NumericalFailure& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const RankTooHigh& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
  return 0;
}
