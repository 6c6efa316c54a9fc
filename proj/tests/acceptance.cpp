// One PASS/FAIL line per acceptance criterion; exit status 1 if any line fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "cubicform/borcherds.hpp"
#include "cubicform/cli.hpp"
#include "cubicform/weil.hpp"

using namespace cubicform;

namespace {

int failures = 0;

void report(int n, const std::string& what, const std::function<bool(std::string&)>& body) {
  std::string info;
  bool ok = false;
  try {
    ok = body(info);
  } catch (const std::exception& ex) {
    info = std::string("exception: ") + ex.what();
  }
  if (!ok) ++failures;
  std::printf("%s criterion %2d: %s%s%s\n", ok ? "PASS" : "FAIL", n, what.c_str(), info.empty() ? "" : " -- ",
              info.c_str());
}

int run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  return cli::run(args, out, err);
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();

  const Lattice m = cubic_surface_lattice();
  const auto group = discriminant_group(m);
  const FVector f = assemble_f(12);

  report(1, "lattice data", [&](std::string& info) {
    info = "rank " + std::to_string(m.rank()) + ", det " + m.determinant().get_str() + ", |D| " +
           std::to_string(group->order());
    return m.rank() == 10 && abs(m.determinant()) == 243 && group->order() == 243 &&
           group->invariant_factors() == std::vector<Integer>(5, 3);
  });

  report(2, "type class sizes (1, 80, 90, 72)", [&](std::string&) {
    std::array<unsigned long, 4> sizes{};
    for (const auto& e : group->elements()) ++sizes[type_index(type_of(e))];
    return sizes == reference::class_sizes();
  });

  CountTable table;
  report(3, "counting table, 48 entries and per-type uniformity", [&](std::string& info) {
    const auto t0 = std::chrono::steady_clock::now();
    table = counting_table(*group);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const auto r = compare_count_tables(table, reference::count_table());
    info = r.details.back() + ", " + std::to_string(secs) + " s";
    return r.passed() && secs < 1.0;
  });

  ReducedSMatrix s;
  report(4, "reduced S-matrix rows", [&](std::string&) {
    s = reduce_s_matrix(table);
    return s.entries == RatMatrix{{1, 80, 90, 72}, {1, -1, 9, -9}, {1, 8, -9, 0}, {1, -10, 0, 9}};
  });

  report(5, "q-expansion coefficients of f_00, f_0, f_2", [&](std::string&) {
    return check_f_coefficients(f).passed() && f[CosetType::T00].coefficient(0) == 24 &&
           f[CosetType::T00].coefficient(1) == 216 && f[CosetType::T00].coefficient(2) == 1296 &&
           f[CosetType::T0].coefficient(0) == -3 && f[CosetType::T2].coefficient(Rational(-1, 3)) == 1 &&
           f[CosetType::T2].coefficient(Rational(2, 3)) == 14 && f[CosetType::T2].coefficient(Rational(5, 3)) == 92;
  });

  report(6, "eta cube theta identity to exponent 10", [&](std::string&) {
    return check_eta_cube_identity(10).passed();
  });

  report(7, "restrict_residue(g, 0) = -3h to exponent 10", [&](std::string&) {
    return check_triple_shift_identity(10).passed();
  });

  report(8, "T-check passes; injected term fails", [&](std::string&) {
    FVector bad = f;
    bad[CosetType::T2] = add(bad[CosetType::T2], QSeries::monomial(1, 1));
    return check_T(f).status == Status::Pass && check_T(bad).status == Status::Fail;
  });

  report(9, "S-check residual < 1e-6 at i, 2i, 1/2+i; perturbed matrix fails", [&](std::string& info) {
    bool ok = true;
    double worst = 0;
    for (const std::complex<double> tau : {std::complex<double>(0, 1), {0, 2}, {0.5, 1}}) {
      const auto pt = evaluate_S(f, s, tau);
      worst = std::max(worst, pt.max_residual);
      ok = ok && check_S_numeric(f, s, tau, 1e-6).status == Status::Pass && pt.max_residual < 1e-6;
    }
    ReducedSMatrix bad = s;
    bad.entries(2, 3) += 1;
    ok = ok && check_S_numeric(f, bad, {0, 1}, 1e-6).status == Status::Fail;
    char buf[64];
    std::snprintf(buf, sizeof buf, "max residual %.2e", worst);
    info = buf;
    return ok;
  });

  report(10, "weight 12 and principal part [(2, -1/3, 1)]", [&](std::string&) {
    return product_weight(f) == 12 &&
           principal_part(f) == std::vector<PrincipalTerm>{{CosetType::T2, Rational(-1, 3), 1}};
  });

  report(11, "omega suite at bound 3", [&](std::string& info) {
    const auto w = omega_isometry();
    DivisorSummary sum;
    const bool ok = check_omega(w, m).passed() && check_divisor_orbits(3, w, &sum).passed();
    info = std::to_string(sum.enumerated) + " enumerated, " + std::to_string(sum.closed) + " after closure, " +
           std::to_string(sum.orbits) + " orbits";
    // Frozen from tests/oracles/divisor_vector_count.py.
    return ok && sum.enumerated == 31320 && sum.closed == 70584 && sum.orbits == 23528;
  });

  report(12, "verify exits 0, every --corrupt exits 1, under 10 s", [&](std::string& info) {
    bool ok = run_cli({"verify"}) == 0;
    for (const auto& name : cli::corruption_names()) ok = ok && run_cli({"verify", "--corrupt", name}) == 1;
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    info = std::to_string(secs) + " s total";
    return ok && secs < 10.0;
  });

  return failures == 0 ? 0 : 1;
}
