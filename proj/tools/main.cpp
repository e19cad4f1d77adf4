#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "periodic_homology/cli.hpp"

namespace ph = periodic_homology;
namespace cli = periodic_homology::cli;

namespace {

int emit(const cli::CommandResult& r) {
  std::cout << r.out;
  std::cerr << r.err;
  return r.exit_code;
}

ph::Flavor parse_flavor(const std::string& s) {
  if (s == "periodic") return ph::Flavor::periodic;
  if (s == "truncated") return ph::Flavor::truncated;
  throw ph::Error(ph::ErrorKind::invalid_argument, "--flavor must be periodic or truncated");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Homology of periodic cell complexes"};
  app.require_subcommand(1);

  std::string path;
  auto add_input = [&](CLI::App* sub) {
    sub->add_option("input", path, "JSON document, or - for stdin")->required();
  };

  auto* validate = app.add_subcommand("validate", "Check a template or WQG document");
  add_input(validate);

  auto* analyze = app.add_subcommand("wqg-analyze", "Connectivity and H1 generators of a WQG");
  add_input(analyze);
  std::vector<long long> window;
  bool verify = false;
  std::size_t max_generators = 50;
  analyze->add_option("--window", window, "Window sizes n1,...,nd")->delimiter(',');
  analyze->add_flag("--verify", verify, "Compare against direct window homology");
  analyze->add_option("--max-generators", max_generators, "Cap on listed generators");

  auto* homology = app.add_subcommand("homology", "Betti numbers of a window");
  add_input(homology);
  std::vector<long long> n;
  std::string flavor = "periodic";
  std::string field = "rational";
  homology->add_option("--n", n, "Window sizes n1,...,nd")->delimiter(',')->required();
  homology->add_option("--flavor", flavor, "periodic or truncated");
  homology->add_option("--field", field, "rational or a prime");
  homology->add_option("--max-generators", max_generators, "Cap on listed generators");

  auto* mvss = app.add_subcommand("mvss", "Mayer-Vietoris spectral sequence of a window");
  add_input(mvss);
  std::string report = "all";
  std::size_t max_arity = 32;
  mvss->add_option("--n", n, "Window sizes n1,...,nd")->delimiter(',')->required();
  mvss->add_option("--report", report, "toroidal, pages or all");
  mvss->add_option("--field", field, "rational or a prime");
  mvss->add_option("--max-arity", max_arity, "Largest cover-element intersection");
  mvss->add_option("--max-generators", max_generators, "Cap on listed generator supports");

  auto* scaling = app.add_subcommand("scaling", "Growth of Betti and toroidal counts with n");
  add_input(scaling);
  std::vector<long long> sizes;
  std::size_t dim = 1;
  scaling->add_option("--sizes", sizes, "Window sizes")->delimiter(',')->required();
  scaling->add_option("--dim", dim, "Homology degree");
  scaling->add_option("--field", field, "rational or a prime");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*validate) return emit(cli::cmd_validate(path));
    if (*analyze) {
      cli::WqgAnalyzeOptions o;
      if (!window.empty()) o.window = ph::ZVector(window.begin(), window.end());
      o.verify = verify;
      o.max_generators = max_generators;
      return emit(cli::cmd_wqg_analyze(path, o));
    }
    if (*homology) {
      cli::HomologyOptions o;
      o.n = ph::ZVector(n.begin(), n.end());
      o.flavor = parse_flavor(flavor);
      o.field = field;
      o.max_generators = max_generators;
      return emit(cli::cmd_homology(path, o));
    }
    if (*mvss) {
      cli::MvssOptions o;
      o.n = ph::ZVector(n.begin(), n.end());
      o.report = report;
      o.field = field;
      o.max_arity = max_arity;
      o.max_generators = max_generators;
      return emit(cli::cmd_mvss(path, o));
    }
    if (*scaling) {
      cli::ScalingOptions o;
      o.sizes = sizes;
      o.dim = dim;
      o.field = field;
      return emit(cli::cmd_scaling(path, o));
    }
  } catch (const ph::Error& e) {
    std::cerr << ph::to_string(e.kind()) << ": " << e.what() << "\n";
    return cli::exit_code_for(e.kind());
  }
  return 2;
}
