// biderive: checks and constructions for biderivations on finitely
// presented algebras. Subcommands: check, extend, tensor, fibre, core, dme,
// corpus. Exit codes: 0 all checks pass, 1 a check failed, 2 usage or parse
// error.
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "biderive/corpus.hpp"
#include "biderive/io.hpp"

using namespace biderive;

namespace {

struct GlobalOpts {
  bool json = false;
  std::string config_path;
  std::string out_path;
};

void print_report(const Report& rep, const GlobalOpts& g) {
  if (g.json)
    std::cout << rep.to_json().dump(2) << "\n";
  else
    std::cout << rep.render_human();
  if (!g.out_path.empty() && !rep.emitted.is_null()) {
    std::ofstream out(g.out_path);
    if (!out) throw error("cannot write " + g.out_path);
    out << rep.emitted.dump(2) << "\n";
  }
}

std::map<std::string, std::string> parse_map_flag(const std::string& text) {
  std::map<std::string, std::string> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find_first_of(";,", pos);
    if (end == std::string::npos) end = text.size();
    std::string item = text.substr(pos, end - pos);
    std::size_t eq = item.find_first_of("=:");
    if (eq == std::string::npos)
      throw error("expected name=value entries, got: " + item);
    auto trim = [](std::string s) {
      std::size_t a = s.find_first_not_of(" \t");
      std::size_t b = s.find_last_not_of(" \t");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    out[trim(item.substr(0, eq))] = trim(item.substr(eq + 1));
    pos = end + 1;
  }
  return out;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find_first_of(";,", pos);
    if (end == std::string::npos) end = text.size();
    std::string item = text.substr(pos, end - pos);
    if (item.find_first_not_of(" \t") != std::string::npos) out.push_back(item);
    pos = end + 1;
  }
  return out;
}

std::vector<Scalar> parse_point(const std::string& text) {
  std::vector<Scalar> out;
  for (const auto& s : split_list(text)) out.push_back(scalar_from_string(
      s.substr(s.find_first_not_of(" \t"))));
  return out;
}

OutcomeStatus from_check(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass:
    case CheckStatus::Structural:
      return OutcomeStatus::Pass;
    case CheckStatus::Fail:
      return OutcomeStatus::Fail;
    default:
      return OutcomeStatus::Partial;
  }
}

AlgebraMorphism morphism_from_request(const SystemDescription& src,
                                      const SystemDescription& dst,
                                      const std::string& inline_map,
                                      const std::string& named) {
  std::map<std::string, std::string> raw;
  if (!named.empty()) {
    auto it = src.morphisms.find(named);
    if (it == src.morphisms.end()) {
      auto jt = dst.morphisms.find(named);
      if (jt == dst.morphisms.end())
        throw error("no morphism named " + named + " in either file");
      raw = jt->second;
    } else {
      raw = it->second;
    }
  } else if (!inline_map.empty()) {
    raw = parse_map_flag(inline_map);
  } else {
    throw error("a variable map is required (--iota/--phi or a named "
                "morphism)");
  }
  std::map<std::string, RationalFunction> images;
  for (const auto& [var, img] : raw)
    images[var] = parse_element(img, dst.ambient());
  return make_morphism(src.algebra(), dst.algebra(), images);
}

NoetherData noether_from_request(const SystemDescription& sys,
                                 const std::string& ys, const std::string& bs,
                                 const std::vector<std::string>& minpolys,
                                 const Config& cfg) {
  if (!ys.empty()) {
    NoetherData nd;
    nd.y_list = split_list(ys);
    nd.b_list = split_list(bs);
    std::vector<std::string> pvars = sys.ambient()->vars();
    pvars.push_back(nd.tvar);
    AmbientPtr pamb = Ambient::make(pvars, sys.ambient()->order());
    for (const auto& s : minpolys)
      nd.minpolys.push_back(parse_polynomial(s, pamb));
    return nd;
  }
  if (sys.noether) return *sys.noether;
  return auto_noether(sys.algebra(), cfg.noether_retries, cfg.seed);
}

int cmd_check(const std::string& file, const std::string& ideal_str,
              const GlobalOpts& g, const Config& cfg) {
  SystemDescription sys = load_system_file(file);
  Report rep;
  rep.command = "check";
  rep.config = cfg;
  rep.inputs_digest =
      digest_inputs({file, emit_system(sys.table, sys.name).dump(), ideal_str});

  const auto& wd = sys.table.well_defined();
  std::vector<std::string> wits;
  for (const auto& f : wd.failures) wits.push_back(f.witness);
  rep.add("well-defined", wd.passed, wits,
          wd.passed ? "relation ideal is stable under the table"
                    : "relation ideal is not stable under the table");

  if (wd.passed) {
    std::string wit;
    bool poisson = is_poisson(sys.table, &wit);
    rep.add_partial("poisson-status",
                    poisson ? "skew, Jacobi, and scalar-bilinear: yes"
                            : "not a Poisson structure: " + wit);
    if (!ideal_str.empty()) {
      IdealHandle I = sys.parse_ideal(split_list(ideal_str));
      bool ok = is_bidifferential_ideal(sys.table, I, &wit);
      rep.add("ideal-bidifferential", ok, ok ? std::vector<std::string>{}
                                             : std::vector<std::string>{wit},
              ok ? "ideal is stable in both slots" : "bracket escapes the ideal");
    }
  }
  print_report(rep, g);
  return rep.exit_code();
}

int cmd_extend(const std::string& file, const std::string& mode,
               const std::string& element, const std::string& var,
               const std::string& minpoly, const std::string& tvar,
               const std::string& dmap, const std::string& emap,
               const GlobalOpts& g, const Config& cfg) {
  SystemDescription sys = load_system_file(file);
  Report rep;
  rep.command = "extend";
  rep.config = cfg;
  rep.inputs_digest = digest_inputs({file, mode, element, var, minpoly, dmap,
                                     emap});
  try {
    ExtensionResult res = [&] {
      if (mode == "localise") {
        if (element.empty()) throw CLI::ValidationError("--element required");
        return extend_localisation(sys.table,
                                   parse_polynomial(element, sys.ambient()));
      }
      if (mode == "algebraic") {
        if (var.empty() || minpoly.empty())
          throw CLI::ValidationError("--var and --minpoly required");
        std::vector<std::string> pvars = sys.ambient()->vars();
        pvars.push_back(tvar);
        AmbientPtr pamb = Ambient::make(pvars, sys.ambient()->order());
        return extend_algebraic(sys.table, var, parse_polynomial(minpoly, pamb),
                                tvar);
      }
      if (mode == "transcendental") {
        if (var.empty()) throw CLI::ValidationError("--var required");
        DerivationSpec D = DerivationSpec::zero(sys.algebra());
        for (const auto& [v, s] : parse_map_flag(dmap))
          D.values[sys.ambient()->index_or_throw(v)] =
              parse_element(s, sys.ambient());
        AlgebraPtr enlarged = append_variable(sys.algebra(), var, false);
        DerivationSpec E = DerivationSpec::zero(enlarged);
        for (const auto& [v, s] : parse_map_flag(emap))
          E.values[enlarged->ambient()->index_or_throw(v)] =
              parse_element(s, enlarged->ambient());
        return extend_transcendental(sys.table, D, E, var);
      }
      throw CLI::ValidationError("unknown mode " + mode);
    }();

    for (const auto& n : res.notes) rep.add_partial("note", n);
    if (!res.forced_unit.is_constant())
      rep.add("inverted-element", true, {res.forced_unit.str()},
              "derivative of the minimal polynomial, made invertible");
    const BracketTable& t = res.table;
    if (mode == "algebraic") {
      const AmbientPtr& namb = t.ambient();
      std::size_t b = namb->index_or_throw(var);
      for (std::size_t z = 0; z < t.nvars(); ++z) {
        if (z == b) continue;
        rep.add_partial("forced-entry",
                        "{" + var + "," + namb->var(z) + "} = " +
                            t.algebra()->reduce(t.entry(b, z)).str() + "; {" +
                            namb->var(z) + "," + var + "} = " +
                            t.algebra()->reduce(t.entry(z, b)).str());
      }
    }
    rep.add("extension", true, {}, "extension constructed");
    rep.emitted = emit_system(t, sys.name + "+" + (var.empty() ? element : var));
    print_report(rep, g);
    return rep.exit_code();
  } catch (const CLI::Error&) {
    throw;
  } catch (const error& e) {
    rep.add("extension", false, {}, e.what());
    print_report(rep, g);
    return 1;
  }
}

int cmd_tensor(const std::string& fileR, const std::string& fileS,
               const std::string& iota_map, const std::string& iota_name,
               bool canonical, const std::string& ny, const std::string& nb,
               const std::vector<std::string>& nmin, const GlobalOpts& g,
               const Config& cfg) {
  SystemDescription R = load_system_file(fileR);
  SystemDescription S = load_system_file(fileS);
  Report rep;
  rep.command = "tensor";
  rep.config = cfg;
  rep.inputs_digest = digest_inputs(
      {fileR, fileS, iota_map, iota_name, canonical ? "canonical" : "", ny});

  try {
    if (canonical) {
      BracketTable C = canonical_tensor_bracket(R.table, S.table);
      const AmbientPtr& m = C.ambient();
      // graph ideal of the requested map (identity by name when omitted)
      std::vector<Polynomial> dgens;
      if (!iota_map.empty() || !iota_name.empty()) {
        AlgebraMorphism iota =
            morphism_from_request(S, R, iota_map, iota_name);
        TensorNaming tn = make_tensor_ambient(R.algebra(), S.algebra());
        for (std::size_t i = 0; i < S.ambient()->size(); ++i) {
          if (S.algebra()->is_scalar(i)) continue;
          RationalFunction img = transport(iota.images[i], m, tn.left_rename);
          dgens.push_back(img.num() -
                          img.den() * Polynomial::variable(
                                          m, tn.right_rename.at(
                                                 S.ambient()->var(i))));
        }
      } else {
        for (std::size_t i = 0; i < S.ambient()->size(); ++i) {
          if (S.algebra()->is_scalar(i)) continue;
          const std::string& v = S.ambient()->var(i);
          dgens.push_back(parse_polynomial("L." + v + " - R." + v, m));
        }
      }
      std::string wit;
      bool diag_ok = is_bidifferential_ideal(
          C, IdealHandle::from_generators(std::move(dgens), m), &wit);
      rep.add("graph-ideal-bidifferential", diag_ok,
              diag_ok ? std::vector<std::string>{}
                      : std::vector<std::string>{wit},
              "product bracket, graph ideal of the given map");
      rep.emitted = emit_system(C, R.name + "(x)" + S.name + "-product");
      print_report(rep, g);
      return rep.exit_code();
    }

    AlgebraMorphism iota = morphism_from_request(S, R, iota_map, iota_name);
    NoetherData nd = noether_from_request(S, ny, nb, nmin, cfg);
    std::vector<IdealHandle> witnesses;
    for (const auto& w : R.prime_witnesses) witnesses.push_back(R.parse_ideal(w));
    TensorExtension T =
        theorem_tensor(R.table, S.table, iota, nd, witnesses, cfg.seed);
    for (const auto& c : T.report.checks)
      rep.outcomes.push_back({c.name, from_check(c.status), {}, c.detail, ""});
    rep.emitted = emit_system(T.table, R.name + "(x)" + S.name);
    print_report(rep, g);
    return rep.exit_code();
  } catch (const error& e) {
    rep.add("tensor", false, {}, e.what());
    print_report(rep, g);
    return 1;
  }
}

int cmd_fibre(const std::string& fileX, const std::string& fileY,
              const std::string& phi_map, const std::string& phi_name,
              const std::string& ny, const std::string& nb,
              const std::vector<std::string>& nmin,
              const std::string& concrete_point, bool with_dme,
              const GlobalOpts& g, const Config& cfg) {
  SystemDescription X = load_system_file(fileX);
  SystemDescription Y = load_system_file(fileY);
  Report rep;
  rep.command = "fibre";
  rep.config = cfg;
  rep.inputs_digest =
      digest_inputs({fileX, fileY, phi_map, phi_name, concrete_point});
  try {
    AlgebraMorphism phi = morphism_from_request(Y, X, phi_map, phi_name);

    if (!concrete_point.empty()) {
      std::vector<Scalar> p = parse_point(concrete_point);
      BVariety baseV = BVariety::make(Y.table, Y.name);
      std::string wit;
      bool base_pt = is_b_point(baseV, p, &wit);
      rep.add("base-point-bidifferential", base_pt,
              base_pt ? std::vector<std::string>{}
                      : std::vector<std::string>{wit},
              "is the chosen point a B-point of the base");
      IdealHandle fib = concrete_fibre_ideal(phi, p);
      bool fib_ok = is_bidifferential_ideal(X.table, fib, &wit);
      rep.add("concrete-fibre-bidifferential", fib_ok,
              fib_ok ? std::vector<std::string>{}
                     : std::vector<std::string>{wit},
              "vanishing ideal of the concrete fibre, un-extended structure");
      print_report(rep, g);
      return rep.exit_code();
    }

    NoetherData nd = noether_from_request(Y, ny, nb, nmin, cfg);
    if (with_dme) {
      FibreImageReport fir = fibre_image_reduction(
          phi, X.table, Y.table, nd, cfg.constants_degree, cfg.core_cap,
          cfg.seed);
      rep.add("alpha-b-point", fir.fibre.alpha_is_b_point, {},
              "tautological generic point of the base extension");
      rep.add("fibre-b-subvariety", fir.fibre.fibre_is_b_subvariety, {},
              "graph ideal over the function field");
      auto rational_detail = [](const RationalEntry& e) {
        if (e.kind == RationalEntry::Kind::NoneUpTo)
          return "NoneUpTo(" + std::to_string(e.degree) + ")";
        if (e.kind == RationalEntry::Kind::Witness)
          return "Witness(" + e.witness->str() + ")";
        return std::string("Unknown");
      };
      rep.add_partial("rational-total", rational_detail(fir.total_rational));
      rep.add_partial("rational-base", rational_detail(fir.base_rational));
      rep.add_partial("rational-fibre", rational_detail(fir.fibre_rational));
      auto lc_detail = [](const LocallyClosedEntry& e) {
        std::string k = e.kind == LocallyClosedEntry::Kind::WitnessChecked
                            ? "WitnessChecked"
                        : e.kind == LocallyClosedEntry::Kind::Failed
                            ? "Failed"
                            : "Unknown";
        if (e.darboux_overflow) k += " (principal-family overflow)";
        return k + ": " + e.note;
      };
      rep.add_partial("locally-closed-base", lc_detail(fir.base_locally_closed));
      rep.add_partial("locally-closed-fibre",
                      lc_detail(fir.fibre_locally_closed));
    } else {
      GenericFibre gf = generic_b_fibre(phi, X.table, Y.table, nd, cfg.seed);
      rep.add("alpha-b-point", gf.alpha_is_b_point, {},
              "tautological generic point of the base extension");
      rep.add("fibre-b-subvariety", gf.fibre_is_b_subvariety, {},
              "graph ideal over the function field");
      rep.emitted = emit_system(gf.fibre_table, X.name + "-over-k(" + Y.name + ")");
    }
    print_report(rep, g);
    return rep.exit_code();
  } catch (const error& e) {
    rep.add("fibre", false, {}, e.what());
    print_report(rep, g);
    return 1;
  }
}

int cmd_core(const std::string& file, const std::string& ideal_str,
             std::size_t cap, const GlobalOpts& g, const Config& cfg) {
  SystemDescription sys = load_system_file(file);
  Report rep;
  rep.command = "core";
  rep.config = cfg;
  rep.inputs_digest = digest_inputs({file, ideal_str, std::to_string(cap)});
  try {
    IdealHandle I = sys.parse_ideal(split_list(ideal_str));
    CoreResult core = bidifferential_core(sys.table, I, cap);
    std::string basis;
    for (const auto& b : core.ideal.basis()) {
      if (!basis.empty()) basis += ", ";
      basis += b.str();
    }
    if (core.status == CoreResult::Status::Exact) {
      rep.add("core", true, {},
              "Exact at iteration " + std::to_string(core.iterations) +
                  "; core = (" + basis + ")");
    } else {
      rep.add_partial("core", "LowerBoundAfter(" +
                                  std::to_string(core.iterations) +
                                  "); last ideal = (" + basis + ")");
    }
    rep.add_partial("trace", "chain length " + std::to_string(core.trace.size()));
    print_report(rep, g);
    return rep.exit_code();
  } catch (const error& e) {
    rep.add("core", false, {}, e.what());
    print_report(rep, g);
    return 1;
  }
}

int cmd_dme(const std::string& file, const std::string& prime_str,
            const std::string& point_str,
            const std::vector<std::string>& witness_strs, bool maximal,
            const GlobalOpts& g, const Config& cfg) {
  SystemDescription sys = load_system_file(file);
  Report rep;
  rep.command = "dme";
  rep.config = cfg;
  rep.inputs_digest = digest_inputs({file, prime_str, point_str});
  try {
    IdealHandle P = prime_str.empty()
                        ? IdealHandle::zero(sys.ambient())
                        : sys.parse_ideal(split_list(prime_str));
    rep.add_partial("prime", "assumes asserted primality of (" + prime_str +
                                 ")");

    RationalEntry rational = check_b_rational(
        sys.table, P, cfg.constants_degree, [&] {
          std::vector<Polynomial> dens;
          for (const auto& s : cfg.rational_denominators)
            dens.push_back(parse_polynomial(s, sys.ambient()));
          return dens;
        }());
    rep.add_partial("b-rational",
                    rational.kind == RationalEntry::Kind::NoneUpTo
                        ? "NoneUpTo(" + std::to_string(rational.degree) + ")"
                        : "Witness(" + rational.witness->str() + ")");

    bool primitive_unknown = true;
    if (!point_str.empty()) {
      PrimitiveEntry pe = check_b_primitive(sys.table, P,
                                            parse_point(point_str),
                                            cfg.core_cap);
      std::string detail;
      switch (pe.kind) {
        case PrimitiveEntry::Kind::CertifiedZeroCore:
          detail = "CertifiedZeroCore (rank " +
                   std::to_string(pe.certificate->rank) + " of " +
                   std::to_string(pe.certificate->needed) + ")";
          primitive_unknown = false;
          break;
        case PrimitiveEntry::Kind::CoreStabilized:
          detail = std::string("CoreStabilized; core ") +
                   (pe.core_equals_prime ? "equals" : "differs from") +
                   " the prime";
          primitive_unknown = false;
          break;
        default:
          detail = "Unknown: " + pe.note;
      }
      rep.add_partial("b-primitive", detail);
    } else {
      rep.add_partial("b-primitive", "Unknown: no maximal ideal supplied");
    }

    std::vector<IdealHandle> witnesses;
    for (const auto& w : witness_strs)
      witnesses.push_back(sys.parse_ideal(split_list(w)));
    LocallyClosedEntry lc = locally_closed_probe(
        sys.table, P, witnesses, cfg.darboux_degree, maximal);
    std::string detail =
        lc.kind == LocallyClosedEntry::Kind::WitnessChecked ? "WitnessChecked"
        : lc.kind == LocallyClosedEntry::Kind::Failed       ? "Failed"
                                                            : "Unknown";
    detail += ": " + lc.note;
    if (lc.darboux_overflow) detail += " (principal-family overflow)";
    for (const auto& f : lc.extra_principal)
      detail += "; extra principal candidate (" + f.str() + ")";
    rep.add_partial("b-locally-closed", detail);

    if (lc.kind == LocallyClosedEntry::Kind::WitnessChecked && primitive_unknown)
      rep.add_partial("attention",
                      "locally-closed witnessed but primitivity unknown; the "
                      "implication is not auto-upgraded");
    print_report(rep, g);
    return rep.exit_code();
  } catch (const error& e) {
    rep.add("dme", false, {}, e.what());
    print_report(rep, g);
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"biderivations on finitely presented algebras"};
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_flag("--json", g.json, "machine-readable output");
  app.add_option("--config", g.config_path,
                 "config file (default: $BIDERIVE_CONFIG)");
  app.add_option("--out", g.out_path, "write the emitted system here");

  std::string file, fileS, ideal_str, mode, element, var, minpoly, dmap, emap;
  std::string tvar = "t";
  std::string iota_map, iota_name, ny, nb, concrete_point, prime_str, point_str;
  std::vector<std::string> nmin, witness_strs;
  bool canonical = false, with_dme = false, list_only = false, maximal = false;
  std::size_t cap = 0;

  auto* c_check = app.add_subcommand("check", "well-definedness, Poisson "
                                              "status, optional ideal check");
  c_check->add_option("file", file)->required();
  c_check->add_option("--ideal", ideal_str, "comma-separated generators");

  auto* c_extend = app.add_subcommand("extend", "localise / algebraic / "
                                                "transcendental extension");
  c_extend->add_option("file", file)->required();
  c_extend->add_option("--mode", mode)->required()
      ->check(CLI::IsMember({"localise", "algebraic", "transcendental"}));
  c_extend->add_option("--element", element, "element to invert (localise)");
  c_extend->add_option("--var", var, "name of the new variable");
  c_extend->add_option("--minpoly", minpoly, "minimal polynomial in --tvar");
  c_extend->add_option("--tvar", tvar, "formal variable of the minimal "
                                       "polynomial (default t)");
  c_extend->add_option("--D", dmap, "values of {., newvar} on old variables");
  c_extend->add_option("--E", emap, "values of {newvar, .}");

  auto* c_tensor = app.add_subcommand("tensor", "biderivation on R (x) S_f");
  c_tensor->add_option("fileR", file)->required();
  c_tensor->add_option("fileS", fileS)->required();
  c_tensor->add_option("--iota", iota_map, "S-variable images, e.g. u=x");
  c_tensor->add_option("--iota-name", iota_name, "named morphism from a file");
  c_tensor->add_flag("--canonical", canonical,
                     "use the product bracket instead (negative control)");
  c_tensor->add_option("--noether-y", ny, "independent variables of S");
  c_tensor->add_option("--noether-b", nb, "algebraic generators of S");
  c_tensor->add_option("--noether-minpoly", nmin,
                       "minimal polynomial per algebraic generator");

  auto* c_fibre = app.add_subcommand("fibre", "generic fibre of a dominant "
                                              "morphism");
  c_fibre->add_option("fileX", file)->required();
  c_fibre->add_option("fileY", fileS)->required();
  c_fibre->add_option("--phi", iota_map, "pullback images, e.g. u=x");
  c_fibre->add_option("--phi-name", iota_name, "named morphism from a file");
  c_fibre->add_option("--noether-y", ny);
  c_fibre->add_option("--noether-b", nb);
  c_fibre->add_option("--noether-minpoly", nmin);
  c_fibre->add_option("--concrete-point", concrete_point,
                      "diagnostic: test the fibre over this base point in "
                      "the un-extended structure");
  c_fibre->add_flag("--dme", with_dme, "also run the rational and "
                                       "locally-closed probes");

  auto* c_core = app.add_subcommand("core", "bidifferential core chain");
  c_core->add_option("file", file)->required();
  c_core->add_option("--ideal", ideal_str)->required();
  c_core->add_option("--cap", cap, "iteration cap (default from config)");

  auto* c_dme = app.add_subcommand("dme", "Dixmier-Moeglin probes");
  c_dme->add_option("file", file)->required();
  c_dme->add_option("--prime", prime_str, "generators of the prime (default 0)");
  c_dme->add_option("--point", point_str, "coordinates of a maximal ideal");
  c_dme->add_option("--witness", witness_strs,
                    "generators of a witness prime (repeatable)");
  c_dme->add_flag("--maximal", maximal, "assert the prime is maximal");

  auto* c_corpus = app.add_subcommand("corpus", "run the bundled examples");
  c_corpus->add_flag("--list", list_only, "list entry names without running");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    Config cfg = Config::load(g.config_path);
    if (cap == 0) cap = cfg.core_cap;

    if (c_check->parsed()) return cmd_check(file, ideal_str, g, cfg);
    if (c_extend->parsed())
      return cmd_extend(file, mode, element, var, minpoly, tvar, dmap, emap, g,
                        cfg);
    if (c_tensor->parsed())
      return cmd_tensor(file, fileS, iota_map, iota_name, canonical, ny, nb,
                        nmin, g, cfg);
    if (c_fibre->parsed())
      return cmd_fibre(file, fileS, iota_map, iota_name, ny, nb, nmin,
                       concrete_point, with_dme, g, cfg);
    if (c_core->parsed()) return cmd_core(file, ideal_str, cap, g, cfg);
    if (c_dme->parsed())
      return cmd_dme(file, prime_str, point_str, witness_strs, maximal, g, cfg);
    if (c_corpus->parsed()) {
      if (list_only) {
        for (const auto& n : corpus_names()) std::cout << n << "\n";
        return 0;
      }
      Report rep = run_corpus(cfg);
      print_report(rep, g);
      return rep.exit_code();
    }
  } catch (const CLI::Error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const parse_error& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
