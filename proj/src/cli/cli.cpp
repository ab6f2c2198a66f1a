#include "bergman/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <json.hpp>

#include "bergman/asymptotics.hpp"
#include "bergman/berezin.hpp"
#include "bergman/error.hpp"
#include "bergman/kernels.hpp"
#include "bergman/verify.hpp"
#include "bergman/weights.hpp"

namespace bergman::cli {

namespace {

constexpr double kMaxDOverHeight = 10.0;
constexpr int kMaxN = 16;

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

[[noreturn]] void usage(const std::string& field, const std::string& why) { throw UsageError{field + ": " + why}; }

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

// Points in config order: d varies fastest, then y, then b.
std::vector<KernelPoint> points(const RunConfig& cfg) {
  std::vector<KernelPoint> out;
  for (double b : cfg.b)
    for (double y : cfg.y)
      for (double d : cfg.d) out.push_back({cfg.n, d, y, b});
  return out;
}

// Runs fn(i) for i < count on up to thread_count() workers. Each result
// lands in its own slot, so output order never depends on scheduling.
template <class R, class F>
std::vector<R> parallel_map(std::size_t count, F fn) {
  std::vector<R> out(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < count;) {
      try {
        out[i] = fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned workers = std::min<std::size_t>(thread_count(), std::max<std::size_t>(count, 1));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < workers; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

bool is_number(const std::string& cell, double& v) {
  if (cell.empty()) return false;
  char* end = nullptr;
  v = std::strtod(cell.c_str(), &end);
  return end && *end == '\0';
}

void write_output(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw UsageError{"out: cannot open '" + cfg.out + "' for writing"};
  f << text;
}

}  // namespace

unsigned thread_count() {
  if (const char* env = std::getenv("BERGMAN_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<double> parse_list(const std::string& text, const std::string& field) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    double v = 0.0;
    if (!is_number(item, v) || !std::isfinite(v)) usage(field, "'" + item + "' is not a finite number");
    out.push_back(v);
  }
  if (out.empty()) usage(field, "empty list");
  return out;
}

void load_config_file(const std::string& path, RunConfig& cfg) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    pt::read_ini(path, tree);
  } catch (const pt::ini_parser_error& e) {
    usage("config", e.what());
  }
  const std::set<std::string> known = {"weight.name", "weight.n",   "grid.alphas", "grid.d",
                                       "grid.y",      "grid.b",     "grid.symbol", "tolerances.tol"};
  for (const auto& [section, body] : tree) {
    if (body.empty()) usage("config", "key '" + section + "' outside a section");
    for (const auto& [key, value] : body) {
      const std::string full = section + "." + key;
      if (!known.count(full)) usage("config", "unknown key '" + full + "'");
      const std::string v = trim(value.data());
      if (full == "weight.name") cfg.weight = v;
      else if (full == "weight.n") {
        double n = 0.0;
        if (!is_number(v, n) || n != std::floor(n)) usage("n", "'" + v + "' is not an integer");
        cfg.n = static_cast<int>(n);
      } else if (full == "grid.alphas") cfg.alphas = parse_list(v, "alphas");
      else if (full == "grid.d") cfg.d = parse_list(v, "d");
      else if (full == "grid.y") cfg.y = parse_list(v, "y");
      else if (full == "grid.b") cfg.b = parse_list(v, "b");
      else if (full == "grid.symbol") cfg.symbol = v;
      else if (full == "tolerances.tol") {
        double t = 0.0;
        if (!is_number(v, t)) usage("tol", "'" + v + "' is not a number");
        cfg.tol = t;
      }
    }
  }
}

void validate(const std::string& command, const RunConfig& cfg) {
  if (cfg.format != "csv" && cfg.format != "json") usage("format", "expected csv or json, got '" + cfg.format + "'");
  if (command == "verify") {
    if (cfg.level != "quick" && cfg.level != "full") usage("level", "expected quick or full, got '" + cfg.level + "'");
    if (!(cfg.omega_fault > 0.0) || !std::isfinite(cfg.omega_fault)) usage("omega-fault", "must be positive");
    return;
  }
  const auto names = builtin_weight_names();
  if (std::find(names.begin(), names.end(), cfg.weight) == names.end())
    usage("weight", "unknown weight '" + cfg.weight + "'");
  if (cfg.n < 2 || cfg.n > kMaxN) usage("n", "must be in [2, " + std::to_string(kMaxN) + "], got " + std::to_string(cfg.n));
  if (!(cfg.tol >= 1e-15 && cfg.tol <= 1e-3)) usage("tol", "must be in [1e-15, 1e-3]");
  if (cfg.alphas.empty()) usage("alphas", "empty list");
  for (double a : cfg.alphas)
    if (!(a >= 0.0) || !std::isfinite(a)) usage("alphas", "values must be finite and >= 0");
  for (double b : cfg.b)
    if (!(b > 0.0)) usage("b", "values must be > 0");

  if (command == "berezin") {
    try {
      (void)make_symbol(cfg.symbol);
    } catch (const DomainError&) {
      usage("symbol", "unknown symbol '" + cfg.symbol + "'");
    }
    return;
  }

  for (double y : cfg.y)
    if (!(y > 0.0)) usage("y", "values must be > 0");
  for (double d : cfg.d)
    if (!(d >= 0.0)) usage("d", "values must be >= 0");
  for (const KernelPoint& p : points(cfg))
    if (p.d > kMaxDOverHeight * (p.y + p.b))
      usage("d", num(p.d) + " exceeds 10 (y + b) = " + num(kMaxDOverHeight * (p.y + p.b)));

  if (command == "kernel") {
    if (cfg.route != "radial" && cfg.route != "holomorphic" && cfg.route != "closed" && cfg.route != "diagonal")
      usage("route", "expected radial, holomorphic, closed or diagonal, got '" + cfg.route + "'");
    if (cfg.route == "closed" && cfg.weight != "gamma") usage("route", "closed is only available for weight gamma");
    if (cfg.route == "diagonal")
      for (const KernelPoint& p : points(cfg))
        if (p.d != 0.0 || p.y != p.b) usage("route", "diagonal needs d = 0 and y = b at every point");
  }
  if (command == "asym") {
    if (cfg.alphas.size() < 3) usage("alphas", "asym needs at least 3 values");
    for (std::size_t i = 0; i < cfg.alphas.size(); ++i) {
      if (!(cfg.alphas[i] > 0.0)) usage("alphas", "asym needs alpha > 0");
      if (i > 0 && !(cfg.alphas[i] > cfg.alphas[i - 1])) usage("alphas", "asym needs strictly increasing values");
    }
  }
}

Table cmd_kernel(const RunConfig& cfg) {
  const Weight w = make_builtin_weight(cfg.weight);
  const auto pts = points(cfg);
  const std::size_t np = pts.size();
  Table t;
  t.header = {"alpha", "n", "d", "y", "b", "value", "err_est", "route"};
  const auto values = parallel_map<KernelValue>(cfg.alphas.size() * np, [&](std::size_t i) {
    const double a = cfg.alphas[i / np];
    const KernelPoint& p = pts[i % np];
    if (cfg.route == "holomorphic") return r_alpha_via_holomorphic(w, a, p, cfg.tol);
    if (cfg.route == "closed") return p.n == 2 ? r_alpha_gamma_closed_n2(a, p) : r_alpha_gamma_closed(a, p);
    if (cfg.route == "diagonal") return r_alpha_diagonal(w, p.n, a, p.b, cfg.tol);
    return r_alpha_radial(w, a, p, cfg.tol);
  });
  for (std::size_t i = 0; i < values.size(); ++i) {
    const KernelPoint& p = pts[i % np];
    const KernelValue& v = values[i];
    t.converged = t.converged && v.converged;
    t.rows.push_back({num(cfg.alphas[i / np]), std::to_string(p.n), num(p.d), num(p.y), num(p.b), num(v.real()),
                      num(v.err_est()), cfg.route == "diagonal" ? "diagonal" : std::string(route_name(v.route))});
  }
  return t;
}

Table cmd_asym(const RunConfig& cfg) {
  const Weight w = make_builtin_weight(cfg.weight);
  const auto pts = points(cfg);
  const std::size_t na = cfg.alphas.size();
  Table t;
  t.header = {"alpha", "n", "d", "y", "b", "exact", "leading", "ratio", "order", "c0"};
  struct Row {
    KernelValue exact;
    LogComplex leading;
  };
  const auto rows = parallel_map<Row>(pts.size() * na, [&](std::size_t i) {
    const KernelPoint& p = pts[i / na];
    const double a = cfg.alphas[i % na];
    Row r;
    if (cfg.weight == "gamma") r.exact = p.n == 2 ? r_alpha_gamma_closed_n2(a, p) : r_alpha_gamma_closed(a, p);
    else r.exact = r_alpha_radial(w, a, p, cfg.tol);
    r.leading = offdiag_leading(w, a, p);
    return r;
  });
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const KernelPoint& p = pts[k];
    std::vector<Sample> ratios, errors;
    for (std::size_t j = 0; j < na; ++j) {
      const Row& r = rows[k * na + j];
      const double a = cfg.alphas[j];
      t.converged = t.converged && r.exact.converged;
      // Both are real; the ratio is formed in log form so large alpha cannot overflow it.
      const double sign = (r.exact.real() < 0) != (r.leading.real() < 0) ? -1.0 : 1.0;
      const double ratio = sign * std::exp(r.exact.log_value.log_mag() - r.leading.log_mag());
      std::string order;
      if (!errors.empty() && ratio != 1.0)
        order = num(std::log(std::fabs(ratio - 1.0) / errors.back().second) / std::log(a / errors.back().first));
      ratios.push_back({a, ratio});
      errors.push_back({a, std::fabs(ratio - 1.0)});
      t.rows.push_back({num(a), std::to_string(p.n), num(p.d), num(p.y), num(p.b), num(r.exact.real()),
                        num(r.leading.real()), num(ratio), order, ""});
    }
    std::string order, c0;
    try {
      order = num(convergence_order(errors));
    } catch (const DomainError&) {
      order = "";  // an exact leading term has no remainder to fit
    }
    c0 = num(richardson_fit(ratios, std::min<int>(2, static_cast<int>(na) - 2)).coefficients[0]);
    t.rows.push_back({"fit", std::to_string(p.n), num(p.d), num(p.y), num(p.b), "", "", "", order, c0});
  }
  return t;
}

Table cmd_berezin(const RunConfig& cfg) {
  const Weight w = make_builtin_weight(cfg.weight);
  const VerticalSymbol g = make_symbol(cfg.symbol);
  const std::size_t nb = cfg.b.size();
  Table t;
  t.header = {"alpha", "b", "B_value", "g_b", "q1_pred", "q2_pred", "residual1", "residual2"};
  const auto values = parallel_map<BerezinValue>(cfg.alphas.size() * nb, [&](std::size_t i) {
    return berezin_vertical(w, cfg.n, cfg.alphas[i / nb], g, cfg.b[i % nb], cfg.tol);
  });
  std::vector<double> q1(nb), q2(nb);
  for (std::size_t k = 0; k < nb; ++k) {
    q1[k] = q1_vertical(w, cfg.n, g, cfg.b[k]);
    q2[k] = q2_vertical_analytic(w, cfg.n, g, cfg.b[k]);
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double a = cfg.alphas[i / nb];
    const std::size_t k = i % nb;
    const double b = cfg.b[k];
    const double gb = g(b);
    const double bv = values[i].value;
    t.converged = t.converged && values[i].converged;
    t.rows.push_back({num(a), num(b), num(bv), num(gb), num(q1[k]), num(q2[k]), num(a * (bv - gb)),
                      num(a * a * (bv - gb) - a * q1[k])});
  }
  return t;
}

std::string render_csv(const Table& t) {
  std::string out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  line(t.header);
  for (const auto& r : t.rows) line(r);
  return out;
}

std::string render_json(const Table& t) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& r : t.rows) {
    nlohmann::ordered_json row;
    for (std::size_t i = 0; i < r.size(); ++i) {
      double v = 0.0;
      if (r[i].empty()) row[t.header[i]] = nullptr;
      else if (r[i].find_first_not_of("-0123456789") == std::string::npos) row[t.header[i]] = std::stoll(r[i]);
      else if (is_number(r[i], v) && std::isfinite(v)) row[t.header[i]] = v;
      else row[t.header[i]] = r[i];
    }
    rows.push_back(std::move(row));
  }
  nlohmann::ordered_json doc;
  doc["columns"] = t.header;
  doc["rows"] = std::move(rows);
  doc["converged"] = t.converged;
  return doc.dump(2) + "\n";
}

int run(int argc, const char* const* argv) {
  CLI::App app{"Weighted harmonic Bergman kernels on the upper half-space"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  std::string config_path, alphas, d, y, b;
  app.add_option("--config", config_path, "INI file with [weight], [grid] and [tolerances] sections");
  auto* o_weight = app.add_option("--weight", cfg.weight, "gamma, expcap or logplus");
  auto* o_n = app.add_option("--n", cfg.n, "dimension of H^n");
  auto* o_alphas = app.add_option("--alphas", alphas, "comma-separated alpha values");
  auto* o_d = app.add_option("--d", d, "horizontal separations |x - a|");
  auto* o_y = app.add_option("--y", y, "heights of the first point");
  auto* o_b = app.add_option("--b", b, "heights of the second point");
  auto* o_symbol = app.add_option("--symbol", cfg.symbol, "vertical symbol for berezin");
  auto* o_tol = app.add_option("--tol", cfg.tol, "relative quadrature tolerance");
  app.add_option("--out", cfg.out, "output file (stdout if omitted)");
  app.add_option("--format", cfg.format, "csv or json");

  auto* kernel = app.add_subcommand("kernel", "kernel values R_alpha on a grid");
  kernel->add_option("--route", cfg.route, "radial, holomorphic, closed or diagonal");
  app.add_subcommand("asym", "exact/leading ratios and remainder order");
  app.add_subcommand("berezin", "Berezin transform of a vertical symbol");
  auto* verify = app.add_subcommand("verify", "run the verification suite");
  verify->add_option("--level", cfg.level, "quick or full");
  verify->add_option("--omega-fault", cfg.omega_fault, "scale omega_{n-1} in the diagonal check (testing only)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    // Defaults, then the config file, then explicit flags.
    if (!config_path.empty()) {
      RunConfig from_file = cfg;
      load_config_file(config_path, from_file);
      if (!o_weight->count()) cfg.weight = from_file.weight;
      if (!o_n->count()) cfg.n = from_file.n;
      if (!o_symbol->count()) cfg.symbol = from_file.symbol;
      if (!o_tol->count()) cfg.tol = from_file.tol;
      if (!o_alphas->count()) cfg.alphas = from_file.alphas;
      if (!o_d->count()) cfg.d = from_file.d;
      if (!o_y->count()) cfg.y = from_file.y;
      if (!o_b->count()) cfg.b = from_file.b;
    }
    if (o_alphas->count()) cfg.alphas = parse_list(alphas, "alphas");
    if (o_d->count()) cfg.d = parse_list(d, "d");
    if (o_y->count()) cfg.y = parse_list(y, "y");
    if (o_b->count()) cfg.b = parse_list(b, "b");
    validate(command, cfg);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.message << "\n";
    return kUsage;
  }

  try {
    if (command == "verify") {
      VerifyOptions opts;
      opts.level = cfg.level == "full" ? VerifyLevel::full : VerifyLevel::quick;
      opts.omega_fault = cfg.omega_fault;
      const VerifyReport report = run_verify(opts);
      write_output(cfg, report.to_json() + "\n");
      return report.all_pass() ? kOk : kVerifyFailed;
    }
    Table t;
    if (command == "kernel") t = cmd_kernel(cfg);
    else if (command == "asym") t = cmd_asym(cfg);
    else t = cmd_berezin(cfg);
    write_output(cfg, cfg.format == "json" ? render_json(t) : render_csv(t));
    if (!t.converged) {
      std::cerr << "warning: at least one quadrature did not reach its tolerance\n";
      return kNonConvergence;
    }
    return kOk;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.message << "\n";
    return kUsage;
  } catch (const ConvergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNonConvergence;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace bergman::cli
