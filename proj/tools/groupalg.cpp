// groupalg: command-line front end for finite groupoid convolution algebras.
//
// Exit codes: 0 success, 1 invariant violation, 2 parse or usage error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "groupalg/battery.hpp"
#include "groupalg/bisection.hpp"
#include "groupalg/io.hpp"
#include "groupalg/partial_algebra.hpp"
#include "groupalg/representation.hpp"
#include "groupalg/transitive.hpp"

using namespace groupalg;

namespace {

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kParse = 2;

int print_report(const Report& r, std::ostream& os = std::cout) {
  for (const auto& v : r.violations()) {
    os << "FAIL " << v.check << ": " << v.witness;
    if (v.residual != 0.0) os << " (residual " << format_number(v.residual) << ")";
    os << "\n";
  }
  for (const auto& n : r.notes()) os << "note: " << n << "\n";
  if (r.ok()) os << "OK\n";
  return r.ok() ? kOk : kViolation;
}

void write_or_print(const std::string& out, const std::string& text) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw Error("cannot write '" + out + "'");
  f << text;
}

std::string labels(const FiniteGroupoid& g, const std::vector<ObjectId>& xs) {
  std::string s = "{";
  for (std::size_t k = 0; k < xs.size(); ++k) s += (k ? ", " : "") + g.object_label(xs[k]);
  return s + "}";
}

std::string arrow_list(const FiniteGroupoid& g, std::span<const ArrowId> as) {
  std::string s = "{";
  for (std::size_t k = 0; k < as.size(); ++k) s += (k ? ", " : "") + g.arrow_label(as[k]);
  return s + "}";
}

int cmd_validate(const std::string& file, const Tolerances& tol) {
  GroupoidDocument doc = load_groupoid(file);
  Report r = validate(doc.groupoid);
  if (r.ok()) {
    HaarSystem mu = doc.effective_haar();
    Report h = check_haar_positive(doc.groupoid, mu);
    if (h.ok()) h.merge(check_left_invariance(doc.groupoid, mu, tol.exact));
    r.merge(h);
    r.merge(check_measure(doc.groupoid, doc.effective_nu(), tol.accumulated));
  }
  std::cout << doc.groupoid.object_count() << " objects, " << doc.groupoid.arrow_count() << " arrows\n";
  return print_report(r);
}

int cmd_check_all(const std::vector<std::string>& files, std::uint64_t seed, std::size_t trials,
                  const Tolerances& tol) {
  bool all = true;
  for (const auto& file : files) {
    GroupoidDocument doc = load_groupoid(file);
    BatteryOptions opt{seed, trials, tol};
    auto lines = run_battery(doc, opt);
    if (files.size() > 1) std::cout << "== " << file << "\n";
    std::cout << format_battery(lines);
    all = all && battery_passed(lines);
  }
  std::cout << (all ? "all suites passed\n" : "some suites failed\n");
  return all ? kOk : kViolation;
}

int cmd_fibers(const std::string& file, const std::string& object) {
  GroupoidDocument doc = load_groupoid(file);
  const auto& g = doc.groupoid;
  std::vector<ObjectId> xs;
  if (!object.empty()) {
    auto x = g.find_object(object);
    if (!x) throw UnknownLabel(object);
    xs.push_back(*x);
  } else {
    for (std::size_t k = 0; k < g.object_count(); ++k) xs.push_back(object_id(k));
  }
  for (ObjectId x : xs) {
    std::cout << g.object_label(x) << "\n";
    std::cout << "  target fibre: " << arrow_list(g, g.target_fiber(x)) << "\n";
    std::cout << "  source fibre: " << arrow_list(g, g.source_fiber(x)) << "\n";
    auto iso = isotropy(g, x);
    std::cout << "  isotropy:     " << arrow_list(g, iso) << "\n";
  }
  std::cout << "orbits:";
  for (const auto& block : orbits(g)) std::cout << " " << labels(g, block);
  std::cout << "\n";
  return kOk;
}

int cmd_multipliers(const std::string& file) {
  GroupoidDocument doc = load_groupoid(file);
  MultiplierSets m = multipliers(doc.groupoid);
  std::cout << "left:  " << labels(doc.groupoid, m.left) << "\n";
  std::cout << "right: " << labels(doc.groupoid, m.right) << "\n";
  std::cout << "ideal: " << labels(doc.groupoid, m.ideal) << "\n";
  return print_report(m.closure);
}

int cmd_convolve(const std::string& file, const std::string& f, const std::string& h, const std::string& out,
                 bool sparse) {
  GroupoidDocument doc = load_groupoid(file);
  const auto& g = doc.groupoid;
  auto result = convolve(g, doc.effective_haar(), load_function(f, g, sparse), load_function(h, g, sparse));
  write_or_print(out, write_function(g, result));
  return kOk;
}

int cmd_involute(const std::string& file, const std::string& f, const std::string& out, bool sparse) {
  GroupoidDocument doc = load_groupoid(file);
  write_or_print(out, write_function(doc.groupoid, involute(doc.groupoid, load_function(f, doc.groupoid, sparse))));
  return kOk;
}

int cmd_inorm(const std::string& file, const std::string& f, bool sparse) {
  GroupoidDocument doc = load_groupoid(file);
  std::cout << format_number(i_norm(doc.groupoid, doc.effective_haar(), load_function(f, doc.groupoid, sparse)))
            << "\n";
  return kOk;
}

BundleRep make_rep(const GroupoidDocument& doc, const std::string& kind) {
  return kind == "trivial" ? trivial_rep(doc.groupoid) : left_regular_rep(doc.groupoid, doc.effective_haar());
}

int cmd_rep(const std::string& file, const std::string& kind, const std::string& arrow, const Tolerances& tol) {
  GroupoidDocument doc = load_groupoid(file);
  const auto& g = doc.groupoid;
  BundleRep rep = make_rep(doc, kind);
  if (!arrow.empty()) {
    std::cout << write_matrix(rep.op[idx(g.arrow(arrow))]);
    return kOk;
  }
  std::cout << "fibre dimensions:";
  for (std::size_t x = 0; x < g.object_count(); ++x)
    std::cout << " " << g.object_label(object_id(x)) << "=" << rep.bundle.dim[x];
  std::cout << "\n";
  Report r = check_representation(g, rep, tol.exact);
  std::cout << "max residual " << format_number(r.max_residual()) << "\n";
  return print_report(r);
}

int cmd_integrate(const std::string& file, const std::string& f, const std::string& kind, const std::string& out,
                  bool sparse, const Tolerances& tol) {
  GroupoidDocument doc = load_groupoid(file);
  const auto& g = doc.groupoid;
  HaarSystem mu = doc.effective_haar();
  ObjectMeasure nu = doc.effective_nu();
  BundleRep rep = make_rep(doc, kind);
  GroupoidFunction fn = load_function(f, g, sparse);
  Matrix t = integrate_rep(g, mu, nu, rep, fn);
  if (!out.empty()) write_or_print(out, write_matrix(t));
  double op = bundle_operator_norm(rep.bundle, nu, t), in = i_norm(g, mu, fn);
  std::cout << "dimension " << t.rows() << "\n";
  std::cout << "operator norm " << format_number(op) << "\n";
  std::cout << "I-norm " << format_number(in) << "\n";
  if (out.empty()) std::cout << write_matrix(t);
  return print_report(operator_norm_bound_check(g, mu, nu, rep, fn, tol.accumulated));
}

int cmd_equiv(const std::string& file, const Tolerances& tol) {
  GroupoidDocument doc = load_groupoid(file);
  const auto& g = doc.groupoid;
  TransitiveDecomposition d = decompose_transitive(g);
  std::cout << "base " << g.object_label(d.base) << "\n";
  std::cout << "isotropy " << arrow_list(g, d.isotropy) << "\n";
  for (std::size_t x = 0; x < g.object_count(); ++x)
    std::cout << "tau " << g.object_label(object_id(x)) << " = " << g.arrow_label(d.trivializer[x]) << "\n";
  for (const auto& a : g.arrows()) {
    const auto& fz = d.factor[idx(a.id)];
    std::cout << g.arrow_label(a.id) << " = (" << g.object_label(fz.tgt) << ", " << g.arrow_label(fz.g) << ", "
              << g.object_label(fz.src) << ")\n";
  }
  Report r = check_decomposition(g, d);
  r.merge(lemma_isomorphism_check(g, doc.effective_haar(), doc.effective_nu(), tol.exact));
  std::cout << "dimension " << g.arrow_count() << " = " << g.object_count() << "^2 * " << d.isotropy.size() << "\n";
  std::cout << "max residual " << format_number(r.max_residual()) << "\n";
  return print_report(r);
}

int cmd_limit(const std::string& manifest, const std::string& out) {
  InductiveSystem sys = load_manifest(manifest);
  Report r = check_system(sys);
  int code = print_report(r);
  if (!r.ok()) return code;
  LimitResult lim = limit(sys);
  const auto& g = lim.groupoid;
  std::cout << "limit: " << g.object_count() << " objects, " << g.arrow_count() << " arrows\n";
  for (std::size_t p = 0; p < sys.pieces.size(); ++p) {
    Report inj = check_morphism(sys.pieces[p], g, lim.injections[p], true);
    std::cout << "injection " << sys.names[p] << ": " << (inj.ok() ? "ok" : "FAIL") << "\n";
    if (!inj.ok()) code = kViolation;
  }
  GroupoidDocument doc;
  doc.groupoid = g;
  if (!out.empty()) write_or_print(out, write_groupoid(doc));
  return code;
}

int cmd_partial(const std::string& file, const Tolerances& tol) {
  StructureTable t = load_structure_table(file);
  Report r = check_structure(t, tol.exact);
  if (r.ok()) {
    r.merge(check_star_compatibility(t, tol.exact));
    r.merge(ideal_closure_check(t, tol.exact));
  }
  auto names = [&](const std::vector<std::size_t>& ids) {
    std::string s = "{";
    for (std::size_t k = 0; k < ids.size(); ++k) s += (k ? ", " : "") + t.labels[ids[k]];
    return s + "}";
  };
  std::cout << "dimension " << t.dim() << "\n";
  std::cout << "left multipliers:  " << names(multiplier_indices(t, Side::left)) << "\n";
  std::cout << "right multipliers: " << names(multiplier_indices(t, Side::right)) << "\n";
  auto [objects, pairs] = extract_relation(t);
  FiniteGroupoid g = build_from_relation(objects, pairs, ClosurePolicy::complete);
  std::cout << "relation: " << pairs.size() << " pairs; closure has " << g.arrow_count() << " arrows, "
            << orbits(g).size() << " orbits\n";
  return print_report(r);
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite groupoids, their convolution *-algebras and representations"};
  app.require_subcommand(1);

  std::string file, manifest, f_file, g_file, out, object, arrow, kind, rep_kind;
  std::vector<std::string> files;
  std::uint64_t seed = 0;
  std::size_t trials = 100;
  bool sparse = false;

  auto* validate_cmd = app.add_subcommand("validate", "check groupoid, Haar and measure invariants");
  validate_cmd->add_option("file", file, "groupoid file")->required();

  auto* check_cmd = app.add_subcommand("check", "invariant batteries");
  check_cmd->require_subcommand(1);
  auto* all_cmd = check_cmd->add_subcommand("all", "run every invariant suite");
  all_cmd->add_option("files", files, "groupoid files")->required();
  all_cmd->add_option("--seed", seed, "random seed");
  all_cmd->add_option("--trials", trials, "random trials per suite");

  auto* fibers_cmd = app.add_subcommand("fibers", "target and source fibres, isotropy, orbits");
  fibers_cmd->add_option("file", file)->required();
  fibers_cmd->add_option("--object", object, "restrict to one object");

  auto* mult_cmd = app.add_subcommand("multipliers", "left/right multipliers and their ideal");
  mult_cmd->add_option("file", file)->required();

  auto* conv_cmd = app.add_subcommand("convolve", "convolution product f * g");
  conv_cmd->add_option("file", file)->required();
  conv_cmd->add_option("f", f_file)->required();
  conv_cmd->add_option("g", g_file)->required();
  conv_cmd->add_option("--out", out, "write the result here");
  conv_cmd->add_flag("--sparse", sparse, "absent arrows are 0");

  auto* inv_cmd = app.add_subcommand("involute", "involution f*");
  inv_cmd->add_option("file", file)->required();
  inv_cmd->add_option("f", f_file)->required();
  inv_cmd->add_option("--out", out);
  inv_cmd->add_flag("--sparse", sparse);

  auto* inorm_cmd = app.add_subcommand("inorm", "I-norm of f");
  inorm_cmd->add_option("file", file)->required();
  inorm_cmd->add_option("f", f_file)->required();
  inorm_cmd->add_flag("--sparse", sparse);

  auto* rep_cmd = app.add_subcommand("rep", "trivial or left-regular representation");
  rep_cmd->add_option("file", file)->required();
  rep_cmd->add_option("kind", kind)->required()->check(CLI::IsMember({"trivial", "left-regular"}));
  rep_cmd->add_option("--arrow", arrow, "print the matrix of one arrow");

  auto* int_cmd = app.add_subcommand("integrate", "integrated representation of f");
  int_cmd->add_option("file", file)->required();
  int_cmd->add_option("f", f_file)->required();
  int_cmd->add_option("--rep", rep_kind, "trivial or left-regular")
      ->required()
      ->check(CLI::IsMember({"trivial", "left-regular"}));
  int_cmd->add_option("--out", out);
  int_cmd->add_flag("--sparse", sparse);

  auto* equiv_cmd = app.add_subcommand("equiv", "transitive decomposition and matrix-algebra isomorphism");
  equiv_cmd->add_option("file", file)->required();

  auto* limit_cmd = app.add_subcommand("limit", "check an inductive system and build its limit");
  limit_cmd->add_option("manifest", manifest)->required();
  limit_cmd->add_option("--out", out, "write the limit groupoid here");

  auto* partial_cmd = app.add_subcommand("partial", "partial *-algebra structure table checks");
  partial_cmd->add_option("file", file)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kParse;
  }

  Tolerances tol;
  try {
    tol = Tolerances::from_env();
  } catch (const Error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kParse;
  }

  try {
    if (*validate_cmd) return cmd_validate(file, tol);
    if (*all_cmd) return cmd_check_all(files, seed, trials, tol);
    if (*fibers_cmd) return cmd_fibers(file, object);
    if (*mult_cmd) return cmd_multipliers(file);
    if (*conv_cmd) return cmd_convolve(file, f_file, g_file, out, sparse);
    if (*inv_cmd) return cmd_involute(file, f_file, out, sparse);
    if (*inorm_cmd) return cmd_inorm(file, f_file, sparse);
    if (*rep_cmd) return cmd_rep(file, kind, arrow, tol);
    if (*int_cmd) return cmd_integrate(file, f_file, rep_kind, out, sparse, tol);
    if (*equiv_cmd) return cmd_equiv(file, tol);
    if (*limit_cmd) return cmd_limit(manifest, out);
    if (*partial_cmd) return cmd_partial(file, tol);
  } catch (const ParseError& e) {
    std::cerr << "parse error";
    if (e.line() > 0) std::cerr << " at line " << e.line() << ", column " << e.column();
    std::cerr << ": " << e.what() << "\n";
    return kParse;
  } catch (const UnknownLabel& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return kParse;
  } catch (const StructureError& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return kParse;
  } catch (const NotClosed& e) {
    std::cerr << "FAIL relation: " << e.what() << "\n";
    return kViolation;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kViolation;
  }
  return kParse;
}
