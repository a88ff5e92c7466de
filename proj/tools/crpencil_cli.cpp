#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "crpencil/commands.hpp"

using namespace crpencil;

namespace {

void add_config(CLI::App* sub, AnalysisConfig& cfg, bool sampling) {
  sub->add_option("--seed", cfg.seed, "PRNG seed, recorded in the report");
  sub->add_option("--degree-cap", cfg.degree_cap, "refuse symbolic results above this total degree");
  if (sampling) {
    sub->add_option("--samples", cfg.samples, "points at which D is evaluated");
    sub->add_option("--sample-bound", cfg.sample_bound, "sample coordinates lie in [-B, B]");
  }
}

std::vector<Rational> parse_lambda(const std::string& s) {
  std::vector<Rational> out;
  std::stringstream ss(s);
  for (std::string tok; std::getline(ss, tok, ',');) {
    try {
      out.push_back(parse_rational(tok));
    } catch (const FieldError& e) {
      throw InputError(std::string("--lambda: ") + e.what());
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact analysis of pencils with completely reducible fibers"};
  app.set_version_flag("--version", std::string(CRPENCIL_VERSION));
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "json";
  app.add_option("--format", format, "report format")->check(CLI::IsMember({"json", "text"}));

  AnalysisConfig cfg;
  std::string file, pencil_file, outdir, lambda, name;
  bool local = false;
  int k = 3, max_mult = 1;
  ExampleParams ex;

  auto* check = app.add_subcommand("check-multinet", "verify multinet conditions, Latin square and isotopy");
  check->add_option("file", file, "arrangement JSON")->required();
  add_config(check, cfg, false);

  auto* analyze = app.add_subcommand("analyze-pencil", "reduced foliation form, its invariants, Gauss map, bounds");
  analyze->add_option("file", file, "pencil JSON")->required();
  add_config(analyze, cfg, true);
  analyze->add_flag("--symbolic", cfg.symbolic, "use the symbolic determinant in the Gauss-map verdict");

  auto* reson = app.add_subcommand("resonance", "Orlik-Solomon algebra and resonance components");
  reson->add_option("file", file, "arrangement JSON");
  reson->add_option("--from-pencil", pencil_file, "pencil JSON supplying a global component");
  reson->add_flag("--local", local, "report local components");
  reson->add_option("--trials", cfg.trials, "maximality trials");
  add_config(reson, cfg, false);

  auto* search = app.add_subcommand("search", "exhaustive multinet search");
  search->add_option("file", file, "arrangement JSON")->required();
  search->add_option("--k", k, "number of classes")->required();
  search->add_option("--max-mult", max_mult, "largest multiplicity")->required();
  search->add_option("--cap", cfg.search_cap, "largest arrangement searched");
  add_config(search, cfg, false);

  auto* examples = app.add_subcommand("examples", "write example arrangements and pencils");
  examples->add_option("name", name, "hesse | fermat | gdd4 | logarithmic")->required();
  examples->add_option("--d", ex.d, "gdd4 parameter");
  examples->add_option("--m", ex.m, "fermat parameter");
  examples->add_option("--n", ex.n, "logarithmic dimension");
  examples->add_option("--lambda", lambda, "logarithmic residues, comma separated");
  examples->add_option("-o,--out", outdir, "output directory")->required();

  auto* mixed = app.add_subcommand("mixed", "pencil with a mixed third fiber");
  mixed->add_option("file", file, "pencil JSON with one extra fiber");
  add_config(mixed, cfg, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    CommandResult r;
    if (*check) r = cmd_check_multinet(file, cfg);
    else if (*analyze) r = cmd_analyze_pencil(file, cfg);
    else if (*reson) r = cmd_resonance(file, pencil_file, local, cfg);
    else if (*search) r = cmd_search(file, k, max_mult, cfg);
    else if (*examples) {
      if (!lambda.empty()) ex.lambda = parse_lambda(lambda);
      r = cmd_examples(name, ex, outdir);
    } else {
      if (file.empty()) throw InputError("mixed needs a pencil file");
      r = cmd_mixed(file, cfg);
    }
    if (format == "text") std::cout << r.text();
    else std::cout << r.report.dump(2) << "\n";
    return r.exit_code;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << " at position " << e.position() << "\n";
  } catch (const DegreeCapExceeded& e) {
    std::cerr << "input error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return 1;
}
