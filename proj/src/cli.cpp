#include "frobex/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "frobex/constructions.hpp"
#include "frobex/nested.hpp"
#include "frobex/parallel.hpp"
#include "frobex/problem_format.hpp"

namespace frobex::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

struct CommonOpts {
  std::string builtin;
  std::string path;
  std::string base = "q";
  bool serial = false;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--builtin", o.builtin, "builtin problem: nilcoxeter:<n> or groupring:<g>:<h>");
  cmd->add_option("path", o.path, "problem file (.frob)");
  cmd->add_option("--base", o.base, "base ring for group-ring builtins: q or ext:<m>")
      ->default_val("q");
  cmd->add_flag("--serial", o.serial, "run the verification kernels on the serial path");
}

std::optional<NestedProblem> load_problem(const CommonOpts& o, std::ostream& err) {
  if (o.serial) set_exec_mode(ExecMode::serial);
  if (!o.builtin.empty() && !o.path.empty()) {
    err << "error: give either --builtin or a file path, not both\n";
    return std::nullopt;
  }
  if (o.builtin.empty() && o.path.empty()) {
    err << "error: nothing to do; give --builtin <spec> or a file path\n";
    return std::nullopt;
  }
  if (!o.builtin.empty()) {
    try {
      return builtin_problem(o.builtin, o.base);
    } catch (const Error& e) {
      err << "error: " << e.what() << "\n";
      return std::nullopt;
    }
  }
  if (o.base != "q") {
    err << "error: --base applies to builtins; problem files fix their own base ring\n";
    return std::nullopt;
  }
  std::ifstream in(o.path);
  if (!in) {
    err << "error: cannot open '" << o.path << "'\n";
    return std::nullopt;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  ParsedProblem parsed = parse_problem(buf.str());
  if (!parsed.ok()) {
    for (const auto& e : parsed.errors) err << o.path << ": " << e.render() << "\n";
    return std::nullopt;
  }
  if (!parsed.nested) {
    err << "error: '" << o.path << "' defines no tower; nothing to verify\n";
    return std::nullopt;
  }
  NestedProblem p = *parsed.nested;
  p.name = o.path;
  return p;
}

struct Verified {
  Certificate cert;
  Report twist_scan;
};

Verified run_pipeline(const NestedProblem& p) {
  Verified v;
  v.cert = verify_main_theorem(p);
  if (v.cert.valid)
    v.twist_scan = twist_necessity(p, *v.cert.nested_trace, *v.cert.psi_A, *v.cert.psi_B);
  return v;
}

int cmd_verify(const CommonOpts& o, std::ostream& out, std::ostream& err) {
  auto p = load_problem(o, err);
  if (!p) return exit_input_error;
  Verified v = run_pipeline(*p);
  out << v.cert.checks.render();
  out << v.twist_scan.render();
  out << v.cert.summary_line() << "\n";
  return v.cert.valid ? exit_valid : exit_invalid;
}

ordered_json matrix_map_json(const AlgebraSpec& domain, const AlgebraSpec& codomain,
                             const Matrix& m) {
  ordered_json j = ordered_json::object();
  for (std::size_t i = 0; i < domain.dim(); ++i) {
    Vec e(domain.dim(), Scalar(0));
    e[i] = 1;
    j[domain.basis[i]] = lincomb_string(codomain, m.apply(e));
  }
  return j;
}

ordered_json degree_json(const Degree& d) {
  ordered_json j = ordered_json::object();
  j["weight"] = d.weight;
  j["parity"] = to_string(d.parity);
  return j;
}

ordered_json report_json(const NestedProblem& p, const Verified& v) {
  const Certificate& c = v.cert;
  ordered_json j = ordered_json::object();
  j["problem"] = p.name;
  j["valid"] = c.valid;
  if (!c.valid) j["failed_stage"] = c.failed_stage;
  j["degree"] = degree_json(c.extension_degree);
  {
    ordered_json tw = ordered_json::object();
    bool trivial = c.psi_A && c.psi_B && c.psi_A->is_identity() && c.psi_B->is_identity();
    tw["alpha"] = trivial ? "id" : "psi_A";
    tw["beta"] = trivial ? "id" : "psi_B";
    tw["trivial"] = trivial;
    j["twists"] = tw;
  }
  if (c.psi_A) j["psi_A"] = matrix_map_json(*p.tower.A, *p.tower.A, c.psi_A->matrix);
  if (c.psi_B) j["psi_B"] = matrix_map_json(*p.tower.B, *p.tower.B, c.psi_B->matrix);
  if (c.dual_gens) {
    ordered_json dj = ordered_json::object();
    ordered_json xs = ordered_json::array(), ys = ordered_json::array();
    for (const auto& x : c.dual_gens->x) xs.push_back(lincomb_string(*p.tower.B, x.coeffs));
    for (const auto& y : c.dual_gens->y) ys.push_back(lincomb_string(*p.tower.B, y.coeffs));
    dj["x"] = xs;
    dj["y"] = ys;
    dj["degree"] = degree_json(c.dual_gens->lambda_pi);
    j["dual_generators"] = dj;
  }
  if (c.nested_trace) {
    j["nested_trace"] = matrix_map_json(*p.tower.A, *p.tower.B, c.nested_trace->matrix);
    j["nested_trace_degree"] = degree_json(c.nested_trace->degree);
  }
  {
    ordered_json fj = ordered_json::object();
    fj["free"] = c.freeness.free;
    if (c.freeness.free) {
      fj["rank"] = c.freeness.rank;
      ordered_json basis = ordered_json::array();
      for (auto i : c.freeness.basis_indices) basis.push_back(p.tower.A->basis[i]);
      fj["basis"] = basis;
    }
    j["freeness"] = fj;
  }
  {
    ordered_json checks = ordered_json::array();
    for (const auto& l : c.checks.lines) {
      ordered_json cj = ordered_json::object();
      cj["stage"] = l.stage;
      cj["name"] = l.name;
      cj["pass"] = l.pass;
      cj["detail"] = l.detail;
      checks.push_back(cj);
    }
    j["checks"] = checks;
  }
  {
    ordered_json scan = ordered_json::array();
    for (const auto& l : v.twist_scan.lines) {
      ordered_json sj = ordered_json::object();
      sj["name"] = l.name;
      sj["pass"] = l.pass;
      scan.push_back(sj);
    }
    j["twist_scan"] = scan;
  }
  j["summary"] = c.summary_line();
  return j;
}

int cmd_report(const CommonOpts& o, bool as_json, std::ostream& out, std::ostream& err) {
  auto p = load_problem(o, err);
  if (!p) return exit_input_error;
  Verified v = run_pipeline(*p);
  if (as_json) {
    out << report_json(*p, v).dump(2) << "\n";
  } else {
    const Certificate& c = v.cert;
    out << "problem: " << p->name << "\n";
    out << "extension degree: " << to_string(c.extension_degree) << "\n";
    if (c.psi_A) {
      out << "psi_A:\n";
      for (std::size_t i = 0; i < p->tower.A->dim(); ++i) {
        Vec e(p->tower.A->dim(), Scalar(0));
        e[i] = 1;
        out << "  " << p->tower.A->basis[i] << " -> "
            << lincomb_string(*p->tower.A, c.psi_A->apply(e)) << "\n";
      }
    }
    if (c.psi_B) {
      out << "psi_B:\n";
      for (std::size_t i = 0; i < p->tower.B->dim(); ++i) {
        Vec e(p->tower.B->dim(), Scalar(0));
        e[i] = 1;
        out << "  " << p->tower.B->basis[i] << " -> "
            << lincomb_string(*p->tower.B, c.psi_B->apply(e)) << "\n";
      }
    }
    if (c.dual_gens) {
      out << "dual generators (x_i ; y_i):\n";
      for (std::size_t i = 0; i < c.dual_gens->x.size(); ++i)
        out << "  " << lincomb_string(*p->tower.B, c.dual_gens->x[i].coeffs) << " ; "
            << lincomb_string(*p->tower.B, c.dual_gens->y[i].coeffs) << "\n";
    }
    if (c.nested_trace) {
      out << "nested trace:\n";
      for (std::size_t i = 0; i < p->tower.A->dim(); ++i) {
        Vec e(p->tower.A->dim(), Scalar(0));
        e[i] = 1;
        out << "  tr(" << p->tower.A->basis[i] << ") = "
            << lincomb_string(*p->tower.B, c.nested_trace->apply(e)) << "\n";
      }
    }
    out << c.checks.render();
    out << v.twist_scan.render();
    out << c.summary_line() << "\n";
  }
  return v.cert.valid ? exit_valid : exit_invalid;
}

int cmd_dump(const CommonOpts& o, std::ostream& out, std::ostream& err) {
  auto p = load_problem(o, err);
  if (!p) return exit_input_error;
  try {
    out << serialize_problem(*p);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_input_error;
  }
  return exit_valid;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"frobex: certifies nested twisted Frobenius extensions on concrete algebras"};
  app.require_subcommand(1);

  CommonOpts vo, ro, po;
  bool as_json = false;
  CLI::App* verify = app.add_subcommand("verify", "run the full pipeline; exit 0 iff valid");
  add_common(verify, vo);
  CLI::App* report = app.add_subcommand("report", "emit the certificate as a document");
  add_common(report, ro);
  report->add_flag("--json", as_json, "emit JSON instead of text");
  CLI::App* dump = app.add_subcommand("dump", "print the problem in canonical .frob form");
  add_common(dump, po);

  // CLI11 wants argv-style reversed vector of char*
  std::vector<std::string> argv_copy = args;
  std::vector<const char*> argv;
  argv.push_back("frobex");
  for (const auto& a : argv_copy) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    std::ostringstream dummy;
    int code = app.exit(e, out, err);
    return code == 0 ? exit_valid : exit_input_error;
  }

  try {
    if (verify->parsed()) return cmd_verify(vo, out, err);
    if (report->parsed()) return cmd_report(ro, as_json, out, err);
    if (dump->parsed()) return cmd_dump(po, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_input_error;
  }
  err << "error: no command given\n";
  return exit_input_error;
}

}  // namespace frobex::cli
