// tvbetti: validate divisorial fans and compute their Betti numbers.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "tvbetti.hpp"

namespace {

using namespace tvb;

struct Output {
  std::string out, err;
  int status = 0;
};

Output run_validate(const std::string& file, bool machine) {
  const DivisorialFan e = io::to_divisorial_fan(io::parse_input_file(file));
  const ValidationReport rep = validate_divisorial_fan(e);
  Output o;
  o.out = machine ? io::validation_json(rep).dump() + "\n" : io::validation_text(rep);
  if (!rep.ok()) o.status = static_cast<int>(ErrorCategory::Axiom);
  return o;
}

Output run_betti(const std::string& file, bool machine) {
  const DivisorialFan e = io::to_divisorial_fan(io::parse_input_file(file));
  const BettiReport r = betti_report(e);
  return {machine ? io::report_json(r).dump() + "\n" : io::report_text(r), "", 0};
}

Output run_toric_h(const std::string& file, bool machine) {
  const Fan f = io::parse_fan(io::read_file(file));
  if (!f.is_complete()) throw Error(ErrorCategory::Precondition, "fan is not complete");
  const IntPolynomial h = toric_h(f);
  const int d = static_cast<int>(f.ambient_rank());
  if (machine) {
    io::Json j;
    j["h"] = io::coefficients_json(h, d);
    return {j.dump() + "\n", "", 0};
  }
  return {"h = " + io::tuple_text(h, d) + "\n", "", 0};
}

Output run_orbits(const std::string& file, const std::string& label, bool machine) {
  const DivisorialFan e = io::to_divisorial_fan(io::parse_input_file(file));
  if (!e.curve.has(label)) throw Error(ErrorCategory::Parse, "--point: unknown point label \"" + label + "\"");
  const auto faces = faces_at(e, label);
  if (machine) {
    io::Json j;
    j["point"] = label;
    j["faces"] = io::Json::array();
    for (const auto& f : faces) {
      io::Json fj;
      fj["vertices"] = io::detail::vectors_json(f.face.vertices());
      fj["tail"] = io::detail::vectors_json(f.face.tail().rays());
      fj["codim"] = f.codim;
      j["faces"].push_back(fj);
    }
    return {j.dump() + "\n", "", 0};
  }
  std::ostringstream os;
  os << faces.size() << " orbit" << (faces.size() == 1 ? "" : "s") << " over " << label << "\n";
  for (const auto& f : faces) os << "  codim " << f.codim << ": " << to_string(f.face) << "\n";
  return {os.str(), "", 0};
}

Output run_simplicialize(const std::string& file, const std::string& out_path) {
  const Fan f = io::parse_fan(io::read_file(file));
  const Fan s = simplicialize(f);
  const std::string text = io::serialize(s);
  if (out_path == "-") return {text, "", 0};
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw Error(ErrorCategory::Parse, "cannot write " + out_path);
  out << text;
  std::ostringstream os;
  os << "wrote " << out_path << ": " << s.rays().size() << " rays, " << s.maximal_cones().size() << " maximal cones\n";
  return {os.str(), "", 0};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Intersection cohomology of complexity-one torus varieties"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  std::string file, format = "text", point, out_path;
  auto add_format = [&](CLI::App* c) {
    c->add_option("--format", format, "text or machine")->check(CLI::IsMember({"text", "machine"}));
  };

  auto* validate = app.add_subcommand("validate", "check the divisorial fan axioms");
  validate->add_option("file", file, "input document")->required();
  add_format(validate);

  auto* betti = app.add_subcommand("betti", "intersection cohomology Betti numbers");
  betti->add_option("file", file, "input document")->required();
  add_format(betti);

  auto* toric = app.add_subcommand("toric-h", "h-vector of a complete fan");
  toric->add_option("fanfile", file, "fan file")->required();
  add_format(toric);

  auto* orbits = app.add_subcommand("orbits", "torus orbits over a point");
  orbits->add_option("file", file, "input document")->required();
  orbits->add_option("--point", point, "point label")->required();
  add_format(orbits);

  auto* simp = app.add_subcommand("simplicialize", "refine a fan to a simplicial fan");
  simp->add_option("fanfile", file, "fan file")->required();
  simp->add_option("-o,--output", out_path, "output fan file, - for stdout")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : static_cast<int>(ErrorCategory::Parse);
  }

  const bool machine = format == "machine";
  Output o;
  try {
    if (*validate) o = run_validate(file, machine);
    else if (*betti) o = run_betti(file, machine);
    else if (*toric) o = run_toric_h(file, machine);
    else if (*orbits) o = run_orbits(file, point, machine);
    else o = run_simplicialize(file, out_path);
  } catch (const Error& e) {
    std::cerr << "error [" << category_name(e.category()) << "]: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error [invariant]: " << e.what() << "\n";
    return static_cast<int>(ErrorCategory::Invariant);
  }
  std::cout << o.out << std::flush;
  std::cerr << o.err;
  return o.status;
}
