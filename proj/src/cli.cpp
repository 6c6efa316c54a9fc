#include "cubicform/cli.hpp"

#include <algorithm>
#include <complex>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "cubicform/borcherds.hpp"
#include "cubicform/lattice.hpp"
#include "cubicform/qseries.hpp"
#include "cubicform/weil.hpp"

namespace cubicform::cli {

const std::vector<std::string>& corruption_names() {
  static const std::vector<std::string> names = {
      "table",        "s-matrix", "s-numeric", "t-law",          "coefficients",
      "eta-cube",     "triple-shift", "weight", "principal-part", "omega",
  };
  return names;
}

namespace {

std::string command_name(Command c) {
  switch (c) {
    case Command::Table: return "table";
    case Command::QExp: return "qexp";
    case Command::Verify: return "verify";
    case Command::Divisor: return "divisor";
    case Command::Weight: return "weight";
    case Command::All: return "all";
  }
  return "?";
}

class Session {
 public:
  explicit Session(RunConfig cfg) : cfg_(std::move(cfg)) {}

  const RunConfig& config() const { return cfg_; }
  bool corrupted(std::string_view name) const { return cfg_.corrupt && *cfg_.corrupt == name; }

  void report(const VerificationReport& r) {
    ok_ = ok_ && r.passed();
    results_.push_back(to_json(r));
    text_ << to_text(r);
  }
  void data(nlohmann::json j, const std::string& text) {
    results_.push_back(std::move(j));
    text_ << text;
  }
  void error(const std::string& what, const std::string& msg) {
    VerificationReport r{what};
    r.fail(msg);
    report(r);
  }

  int finish(std::ostream& out) const {
    if (cfg_.format == Format::Json) {
      nlohmann::json config = {{"prec", to_string(cfg_.prec)},
                               {"tol", cfg_.tol},
                               {"bound", cfg_.bound},
                               {"format", "json"}};
      if (cfg_.corrupt) config["corrupt"] = *cfg_.corrupt;
      nlohmann::json doc = {{"command", command_name(cfg_.command)}, {"config", config}, {"results", results_}};
      out << doc.dump(2) << "\n";
    } else {
      out << text_.str();
      out << (ok_ ? "all checks passed" : "some checks did not pass") << "\n";
    }
    return ok_ ? 0 : 1;
  }

  // Shared data, built on first use.
  const Lattice& lattice() {
    if (!lattice_) lattice_ = cubic_surface_lattice();
    return *lattice_;
  }
  const DiscGroup& group() {
    if (!group_) group_ = discriminant_group(lattice());
    return *group_;
  }
  const CountTable& table() {
    if (!table_) table_ = counting_table(group());
    return *table_;
  }
  const FVector& f() {
    if (!f_) f_ = assemble_f(cfg_.prec);
    return *f_;
  }

 private:
  RunConfig cfg_;
  bool ok_ = true;
  nlohmann::json results_ = nlohmann::json::array();
  std::ostringstream text_;
  std::optional<Lattice> lattice_;
  std::shared_ptr<const DiscGroup> group_;
  std::optional<CountTable> table_;
  std::optional<FVector> f_;
};

nlohmann::json table_json(const CountTable& t) {
  nlohmann::json entries = nlohmann::json::array();
  static const char* const pairings[] = {"0", "1/3", "2/3"};
  for (std::size_t p = 0; p < 3; ++p)
    for (auto u : kAllCosetTypes)
      for (auto v : kAllCosetTypes)
        entries.push_back({{"u_type", type_name(u)}, {"v_type", type_name(v)}, {"pairing", pairings[p]},
                           {"count", t.at(u, v, p)}});
  return {{"kind", "table"}, {"entries", entries}};
}

std::string table_text(const CountTable& t) {
  std::ostringstream os;
  os << "type of u      ";
  for (auto u : kAllCosetTypes)
    for (int k = 0; k < 4; ++k) os << std::setw(4) << type_name(u);
  os << "\ntype of v      ";
  for (int k = 0; k < 4; ++k)
    for (auto v : kAllCosetTypes) os << std::setw(4) << type_name(v);
  static const char* const labels[] = {"(u,v) = 0   ", "(u,v) = 1/3 ", "(u,v) = 2/3 "};
  for (std::size_t p = 0; p < 3; ++p) {
    os << "\n" << labels[p] << "  ";
    for (auto u : kAllCosetTypes)
      for (auto v : kAllCosetTypes) os << std::setw(4) << t.at(u, v, p);
  }
  os << "\n";
  return os.str();
}

void run_lattice_checks(Session& s) {
  VerificationReport r{"lattice data"};
  const Lattice& m = s.lattice();
  const auto sig = m.signature();
  r.note("rank " + std::to_string(m.rank()) + ", det " + to_string(m.determinant()) + ", signature (" +
         std::to_string(sig.positive) + "," + std::to_string(sig.negative) + ")");
  if (m.rank() != 10) r.fail("rank is not 10");
  if (abs(m.determinant()) != 243) r.fail("|det| is not 243");
  if (!(sig == Signature{2, 8})) r.fail("signature is not (2,8)");
  const auto& g = s.group();
  std::string factors;
  for (const auto& d : g.invariant_factors()) factors += to_string(d) + " ";
  r.note("discriminant group of order " + std::to_string(g.order()) + ", invariant factors " + factors);
  if (g.order() != 243) r.fail("discriminant group order is not 243");
  if (g.invariant_factors() != std::vector<Integer>(5, 3)) r.fail("invariant factors are not (3,3,3,3,3)");
  s.report(r);

  VerificationReport sizes{"coset type class sizes"};
  std::array<unsigned long, 4> count{};
  for (const auto& e : g.elements()) ++count[type_index(type_of(e))];
  sizes.note("(T00, T0, T1, T2) = (" + std::to_string(count[0]) + ", " + std::to_string(count[1]) + ", " +
             std::to_string(count[2]) + ", " + std::to_string(count[3]) + ")");
  if (count != reference::class_sizes()) sizes.fail("class sizes differ from (1, 80, 90, 72)");
  s.report(sizes);
}

void run_table(Session& s) {
  CountTable t = s.table();
  if (s.corrupted("table")) t.counts[1][2][0] += 1;
  s.data(table_json(t), table_text(t));
  auto r = compare_count_tables(t, reference::count_table());
  r.note("count vectors are constant on each type class (checked for all " + std::to_string(s.group().order()) +
         " choices of u)");
  s.report(r);
}

ReducedSMatrix reduced_s(Session& s) { return reduce_s_matrix(s.table()); }

void run_qexp(Session& s) {
  const FVector& f = s.f();
  std::ostringstream os;
  for (auto t : kAllCosetTypes) {
    os << "f_" << type_name(t) << " = " << to_string(f[t]) << "\n";
    s.data({{"kind", "series"}, {"component", type_name(t)}, {"series", to_json(f[t])}}, "");
  }
  s.data(nlohmann::json{{"kind", "note"}, {"text", "f_00 = 24 h, f_0 = -3 h, f_1 = 0, f_2 = g + 3 h"}},
         os.str());
}

FVector corrupted_f(Session& s) {
  FVector f = s.f();
  if (s.corrupted("t-law")) f[CosetType::T00] = add(f[CosetType::T00], QSeries::monomial(1, Rational(1, 3)));
  if (s.corrupted("coefficients")) f[CosetType::T2] = add(f[CosetType::T2], QSeries::monomial(1, Rational(2, 3)));
  if (s.corrupted("weight")) f[CosetType::T00] = add(f[CosetType::T00], QSeries::monomial(2, 0));
  if (s.corrupted("principal-part")) f[CosetType::T1] = QSeries::monomial(1, Rational(-2, 3));
  return f;
}

OmegaIsometry corrupted_omega(Session& s) {
  OmegaIsometry w = omega_isometry();
  if (s.corrupted("omega")) w.matrix(0, 0) += 1;
  return w;
}

void run_weight(Session& s) {
  const FVector f = corrupted_f(s);
  s.report(check_weight(f, 12));
  s.report(check_principal_part(f, {{CosetType::T2, Rational(-1, 3), 1}}));
  s.report(divisor_multiplicities(principal_part(f)));
}

void run_divisor(Session& s, bool emit_vectors) {
  const OmegaIsometry w = corrupted_omega(s);
  s.report(check_omega(w, s.lattice()));
  DivisorSummary summary;
  auto r = check_divisor_orbits(s.config().bound, w, &summary);
  s.report(r);
  if (!emit_vectors || !r.passed()) return;
  const auto closed = close_under_omega(enumerate_divisor_vectors(s.config().bound), w);
  const auto orbits = omega_orbits(closed, w, s.lattice());
  nlohmann::json j = to_json(closed, orbits);
  j["kind"] = "divisors";
  j["enumerated"] = summary.enumerated;
  std::ostringstream os;
  os << "enumerated " << summary.enumerated << " vectors, " << summary.closed << " after ω-closure, "
     << summary.orbits << " orbits\n";
  s.data(std::move(j), os.str());
}

void run_verify(Session& s) {
  run_lattice_checks(s);
  run_table(s);

  ReducedSMatrix sm = reduced_s(s);
  if (s.corrupted("s-matrix")) sm.entries(1, 2) += 1;
  s.report(compare_s_matrix(sm, reference::s_matrix_rows()));
  s.report(check_s_squared(sm, s.group().order()));

  const FVector f = corrupted_f(s);
  s.report(check_f_coefficients(f));

  if (s.corrupted("eta-cube")) {
    const Rational p = s.config().prec;
    s.report(check_series_equal("η(τ)³ = Σ (4n+1) q^((4n+1)²/8)", pow(eta_series(1, p - Rational(1, 12)), 3),
                                add(eta_cube_theta_series(p), QSeries::monomial(1, Rational(17, 8)))));
  } else {
    s.report(check_eta_cube_identity(s.config().prec));
  }

  if (s.corrupted("triple-shift")) {
    const Rational p = s.config().prec;
    s.report(check_triple_shift(eta_quotient_g(p), add(eta_quotient_h(p), QSeries::monomial(1, 2))));
  } else {
    s.report(check_triple_shift_identity(s.config().prec));
  }

  s.report(check_T(f));
  s.report(check_proportionality(f, sm));

  ReducedSMatrix numeric = sm;
  if (s.corrupted("s-numeric")) numeric.entries(3, 1) += 1;
  for (const auto tau : {std::complex<double>(0, 1), std::complex<double>(0, 2), std::complex<double>(0.5, 1)})
    s.report(check_S_numeric(f, numeric, tau, s.config().tol));

  run_weight(s);
  run_divisor(s, false);
}

void dispatch(Session& s) {
  switch (s.config().command) {
    case Command::Table: run_table(s); break;
    case Command::QExp:
      run_qexp(s);
      s.report(check_f_coefficients(corrupted_f(s)));
      break;
    case Command::Verify: run_verify(s); break;
    case Command::Divisor: run_divisor(s, true); break;
    case Command::Weight: run_weight(s); break;
    case Command::All:
      run_qexp(s);
      run_verify(s);
      break;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Discriminant form, counting table, eta-quotient form and lift data for A2 + A2(-1)^4",
               "cubicform"};
  std::string prec_text = "12";
  RunConfig cfg;
  std::string format = "text";
  std::string corrupt;
  app.add_option("--prec", prec_text, "exponent bound for q-series (rational, default 12)");
  app.add_option("--tol", cfg.tol, "absolute tolerance for numerical S checks (default 1e-6)");
  app.add_option("--bound", cfg.bound, "coordinate bound for divisor enumeration (default 3)");
  app.add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--corrupt", corrupt, "test hook: feed a broken input to one check")
      ->check(CLI::IsMember(corruption_names()));
  const std::pair<const char*, const char*> commands[] = {
      {"table", "counting table of v by type and pairing, per type of u"},
      {"qexp", "q-expansions of the four components of f"},
      {"verify", "run every check"},
      {"divisor", "norm -2/3 dual vectors and their ω-orbits"},
      {"weight", "weight, principal part and zero multiplicities of the lift"},
      {"all", "expansions followed by every check"},
  };
  for (const auto& [name, desc] : commands) app.add_subcommand(name, desc)->fallthrough();
  app.require_subcommand(1, 1);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return 2;
  }

  try {
    cfg.prec = parse_rational(prec_text);
  } catch (const std::exception& e) {
    err << "error: --prec: " << e.what() << "\n" << app.help();
    return 2;
  }
  if (cfg.prec <= 0 || !(cfg.tol > 0) || cfg.bound < 1) {
    err << "error: need --prec > 0, --tol > 0 and --bound >= 1\n" << app.help();
    return 2;
  }
  cfg.format = format == "json" ? Format::Json : Format::Text;
  if (!corrupt.empty()) cfg.corrupt = corrupt;
  const std::string sub = app.get_subcommands().front()->get_name();
  for (Command c : {Command::Table, Command::QExp, Command::Verify, Command::Divisor, Command::Weight, Command::All})
    if (command_name(c) == sub) cfg.command = c;

  Session session(cfg);
  try {
    dispatch(session);
  } catch (const std::exception& e) {
    session.error("run " + sub, e.what());
  }
  return session.finish(out);
}

}  // namespace cubicform::cli
