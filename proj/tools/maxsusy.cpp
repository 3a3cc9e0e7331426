// Command-line driver. Reports go to stdout (or --out), diagnostics to stderr.
// Exit codes: 0 verified / ok, 1 checks failed, 2 input error.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "maxsusy/errors.hpp"
#include "maxsusy/io.hpp"

using namespace maxsusy;
using io::json;

namespace {

struct Source {
  std::string catalog, file;
  std::vector<std::string> params;
};

void add_source(CLI::App* cmd, Source& src) {
  auto* cat = cmd->add_option("--catalog", src.catalog, "catalog background kind");
  auto* file = cmd->add_option("--file", src.file, "background JSON file");
  cat->excludes(file);
  cmd->add_option("--param", src.params, "catalog parameter key=value (repeatable)");
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidInput, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::InvalidInput, path + ": " + e.what());
  }
}

Background load(const Source& src) {
  if (!src.file.empty()) {
    if (!src.params.empty()) throw Error(ErrorKind::InvalidInput, "--param only applies to --catalog");
    return io::background_from_json(read_json(src.file));
  }
  if (src.catalog.empty()) throw Error(ErrorKind::InvalidInput, "give --catalog or --file");
  io::Params p;
  for (const auto& kv : src.params) {
    auto eq = kv.find('=');
    if (eq == std::string::npos) throw Error(ErrorKind::InvalidInput, "--param expects key=value, got " + kv);
    p[kv.substr(0, eq)] = kv.substr(eq + 1);
  }
  return io::catalog_background(src.catalog, p);
}

void emit(const json& doc, const std::string& out) {
  if (out.empty()) {
    std::cout << doc.dump(2) << "\n";
    return;
  }
  std::ofstream f(out);
  if (!f) throw Error(ErrorKind::InvalidInput, "cannot write " + out);
  f << doc.dump(2) << "\n";
}

int fail(const std::exception& e, int code) {
  std::cout << io::error_json(e).dump(2) << "\n";
  std::cerr << "maxsusy: " << e.what() << "\n";
  return code;
}

bool is_kaluza_error(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::NotInvariant:
    case ErrorKind::NotSpacelike:
    case ErrorKind::TimelikeFiber:
    case ErrorKind::NonAdaptedCoframe:
    case ErrorKind::FluxNotClosed:
    case ErrorKind::NotASquare:
      return true;
    default:
      return false;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verifier for maximally supersymmetric backgrounds of 11d supergravity"};
  app.require_subcommand(1);
  app.set_version_flag("--version", io::kEngineVersion);

  Source vsrc;
  io::VerifyOptions vopt;
  std::string vout;
  auto* verify = app.add_subcommand("verify", "check field equations and count Killing spinors");
  add_source(verify, vsrc);
  verify->add_option("--samples", vopt.samples, "sample points for the susy upper bound")->check(CLI::PositiveNumber);
  verify->add_option("--seed", vopt.seed, "sampling seed");
  verify->add_flag("--killing", vopt.killing, "also compute the Killing algebra dimension (cw kinds)");
  verify->add_flag("--holonomy", vopt.holonomy, "also run the holonomy probe");
  verify->add_option("--holonomy-samples", vopt.holonomy_samples)->check(CLI::PositiveNumber);
  verify->add_option("--cap", vopt.holonomy_cap, "bracket rounds for the holonomy probe")->check(CLI::PositiveNumber);
  verify->add_flag("--timings", vopt.timings, "include per-stage timings (makes output run-dependent)");
  verify->add_option("--threads", vopt.threads, "worker threads, 0 = all cores");
  verify->add_option("--out", vout, "write the report here instead of stdout");

  std::vector<std::string> blocks;
  std::string mu_text = "3", sout;
  int ssamples = 3;
  std::uint64_t sseed = 0;
  unsigned sthreads = 0;
  auto* scan = app.add_subcommand("scan-cw", "scan a block grid of Cahen-Wallach eigenvalues");
  scan->add_option("--block", blocks, "size:start:stop:step, repeatable; sizes sum to 9");
  scan->add_option("--mu", mu_text, "flux magnitude");
  scan->add_option("--samples", ssamples)->check(CLI::PositiveNumber);
  scan->add_option("--seed", sseed);
  scan->add_option("--threads", sthreads);
  scan->add_option("--out", sout);

  Source rsrc;
  std::string along, rout;
  auto* red = app.add_subcommand("reduce", "reduce to type IIA data along a coordinate");
  add_source(red, rsrc);
  red->add_option("--along", along, "fiber coordinate name")->required();
  red->add_option("--out", rout);

  std::string ofile, oout;
  auto* ox = app.add_subcommand("oxidize", "lift IIA data back to eleven dimensions");
  ox->add_option("--file", ofile, "IIA JSON file")->required();
  ox->add_option("--out", oout);

  std::string cout_path;
  auto* cat = app.add_subcommand("catalog", "list catalog backgrounds and their parameters");
  cat->add_option("--out", cout_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*verify) {
      auto r = io::verify(load(vsrc), vopt);
      emit(r.report, vout);
      return r.ok ? 0 : 1;
    }
    if (*scan) {
      std::vector<io::GridBlock> grid;
      for (const auto& b : blocks) grid.push_back(io::parse_block(b));
      auto lines = io::scan_cw(grid, io::parse_rational(mu_text), ssamples, sseed, sthreads);
      std::ofstream file;
      if (!sout.empty()) {
        file.open(sout);
        if (!file) throw Error(ErrorKind::InvalidInput, "cannot write " + sout);
      }
      std::ostream& os = sout.empty() ? std::cout : file;
      for (const auto& l : lines) os << l.dump() << "\n";
      return 0;
    }
    if (*red) {
      Background bg = load(rsrc);
      int theta = bg.chart()->index_of(along);
      if (theta < 0) throw Error(ErrorKind::InvalidInput, "no coordinate named " + along);
      try {
        emit(io::iia_to_json(reduce(bg, theta)), rout);
      } catch (const Error& e) {
        if (is_kaluza_error(e)) return fail(e, 1);
        throw;
      }
      return 0;
    }
    if (*ox) {
      IIAData d = io::iia_from_json(read_json(ofile));
      try {
        emit(io::background_to_json(oxidize(d)), oout);
      } catch (const Error& e) {
        if (is_kaluza_error(e)) return fail(e, 1);
        throw;
      }
      return 0;
    }
    if (*cat) {
      emit(io::catalog_listing(), cout_path);
      return 0;
    }
  } catch (const std::exception& e) {
    return fail(e, 2);
  }
  return 2;
}
