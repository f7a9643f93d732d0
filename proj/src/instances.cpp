#include "warmcg/instances.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <set>

#include "warmcg/lp.hpp"
#include "warmcg/milp.hpp"

namespace warmcg {

namespace {
constexpr int kMaxResamples = 100;
constexpr double kPi = 3.14159265358979323846;

std::uint64_t splitmix64(std::uint64_t& s) {
  std::uint64_t z = (s += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::string indexed_name(const std::string& prefix, int t) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "-t%04d", t);
  return prefix + buf;
}

// Accepts an instance only when it is feasible and bounded as a full problem.
bool screen(const MilpInstance& inst) {
  const ConstraintSet full(inst, inst.learnable_ids());
  const LpResult relax = solve_lp(LpProblem::relaxation(inst, full));
  if (relax.status == SolveStatus::Infeasible) return false;
  return solve_milp(inst, full).status == SolveStatus::Optimal;
}

// Indicator linking rows x_i <= u_i y_i and x_i >= l_i y_i for variable pair
// (x_i, y_i at index n + i); appended as non-learnable rows.
void append_linking_rows(std::vector<Constraint>& rows, int n, int i, double l, double u) {
  for (Constraint& c : canonicalize({{{i, 1.0}, {n + i, -u}}, Sense::LessEqual, 0.0, false}))
    rows.push_back(std::move(c));
  for (Constraint& c : canonicalize({{{i, -1.0}, {n + i, l}}, Sense::LessEqual, 0.0, false}))
    rows.push_back(std::move(c));
}
}  // namespace

double Rng::uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

double Rng::uniform(double a, double b) { return a + (b - a) * uniform(); }

long Rng::uniform_int(long lo, long hi) {
  const long span = hi - lo + 1;
  const long v = lo + static_cast<long>(uniform() * static_cast<double>(span));
  return std::min(v, hi);
}

double Rng::normal(double mean, double sd) {
  const double u1 = 1.0 - uniform();  // (0, 1], keeps the log finite
  const double u2 = uniform();
  return mean + sd * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
}

std::uint64_t substream(std::uint64_t seed, std::initializer_list<std::uint64_t> path) {
  std::uint64_t s = seed;
  for (std::uint64_t p : path) {
    s ^= splitmix64(s) + p;
    s = splitmix64(s);
  }
  return s;
}

std::vector<MilpInstance> gen_toy() {
  auto make = [](const std::string& name, double b) {
    MilpInstance inst;
    inst.name = name;
    inst.num_continuous = 1;  // x
    inst.num_integer = 1;     // y
    inst.objective = {1.0, -1.0};
    inst.var_bounds = {{}, {}};
    const std::vector<RawConstraint> raws = {
        {{{0, 1.0}}, Sense::LessEqual, 1.5, true},                 // x <= 1.5
        {{{1, 1.0}}, Sense::LessEqual, 1.75, true},                // y <= 1.75
        {{{0, 1.0}}, Sense::GreaterEqual, 0.5, true},              // x >= 0.5
        {{{0, 1.0}, {1, 1.0}}, Sense::GreaterEqual, b, true},      // x + y >= b
        {{{1, 1.0}}, Sense::GreaterEqual, 0.0, true},              // y >= 0
        {{{1, 1.0}}, Sense::LessEqual, 2.25, true},                // y <= 2.25
    };
    for (const RawConstraint& raw : raws)
      for (Constraint& c : canonicalize(raw)) inst.constraints.push_back(std::move(c));
    inst.theta = {b};
    inst.validate();
    return inst;
  };
  return {make("toy-b1.00", 1.0), make("toy-b1.25", 1.25), make("toy-b1.50", 1.5),
          make("toy-test", 1.3)};
}

std::vector<MilpInstance> gen_synthetic(const SyntheticConfig& cfg) {
  if (cfg.n < 1 || cfg.m < 1 || cfg.T < 1) throw Error("gen_synthetic: bad sizes");
  const int n = cfg.n, m = cfg.m;

  // Family-wide data: costs, on-value ranges, and coupling coefficients.
  Rng fam(substream(cfg.seed, {1}));
  std::vector<double> c(n), l(n), u(n);
  for (int i = 0; i < n; ++i) c[i] = fam.normal(0.0, 10.0);
  for (int i = 0; i < n; ++i) {
    const double v1 = fam.normal(0.0, 10.0);
    const double v2 = fam.normal(0.0, 10.0);
    l[i] = std::min(v1, v2);
    u[i] = std::max(v1, v2);
  }
  std::vector<std::vector<double>> a(m, std::vector<double>(n));
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < n; ++i) a[j][i] = fam.normal(0.0, 10.0);

  MilpInstance proto;
  proto.num_continuous = n;
  proto.num_integer = n;
  proto.objective.assign(2 * n, 0.0);
  for (int i = 0; i < n; ++i) proto.objective[i] = c[i];
  for (int i = 0; i < n; ++i) proto.var_bounds.push_back({std::min(0.0, l[i]), std::max(0.0, u[i])});
  for (int i = 0; i < n; ++i) proto.var_bounds.push_back({0.0, 1.0});
  for (int j = 0; j < m; ++j) {
    Constraint row;
    for (int i = 0; i < n; ++i)
      if (a[j][i] != 0.0) row.coeffs.push_back({i, a[j][i]});
    row.learnable = true;
    proto.constraints.push_back(std::move(row));
  }
  for (int i = 0; i < n; ++i) append_linking_rows(proto.constraints, n, i, l[i], u[i]);

  std::vector<MilpInstance> out;
  for (int t = 0; t < cfg.T; ++t) {
    bool accepted = false;
    for (int attempt = 0; attempt < kMaxResamples && !accepted; ++attempt) {
      Rng r(substream(cfg.seed, {2, static_cast<std::uint64_t>(t),
                                 static_cast<std::uint64_t>(attempt)}));
      MilpInstance inst = proto;
      inst.name = indexed_name(cfg.prefix, t);
      inst.theta.resize(m);
      for (int j = 0; j < m; ++j) {
        inst.theta[j] = r.normal(0.0, 10.0);
        inst.constraints[j].rhs = inst.theta[j];
      }
      inst.validate();
      if (screen(inst)) {
        out.push_back(std::move(inst));
        accepted = true;
      }
    }
    if (!accepted)
      throw Error("gen_synthetic: no feasible draw for instance " + std::to_string(t) +
                  " after " + std::to_string(kMaxResamples) + " attempts");
  }
  return out;
}

namespace {
// Hourly demand profile with a morning and an evening peak, in [0.6, 0.86].
double daily_shape(int hour) {
  const double morning = std::exp(-(hour - 8.0) * (hour - 8.0) / 12.0);
  const double evening = std::exp(-(hour - 18.0) * (hour - 18.0) / 18.0);
  return 0.60 + 0.18 * morning + 0.25 * evening;
}

// Power transfer distribution factors for a connected network: line flows are
// ptdf[j] . (generation - demand). Node 0 is the angle reference.
struct Network {
  struct Line {
    int from, to;
    double susceptance;
  };
  std::vector<Line> lines;
  std::vector<std::vector<double>> ptdf;  // m x n
};

Network build_network(Rng& rng, int nodes, int m) {
  if (m < nodes - 1) throw Error("gen_uc: need at least n-1 lines for a connected network");
  Network net;
  std::set<std::pair<int, int>> used;
  auto add_line = [&](int a, int b) {
    net.lines.push_back({a, b, 1.0 / rng.uniform(0.5, 1.5)});
    used.insert({std::min(a, b), std::max(a, b)});
  };
  for (int v = 1; v < nodes; ++v) add_line(static_cast<int>(rng.uniform_int(0, v - 1)), v);
  int guard = 0;
  while (static_cast<int>(net.lines.size()) < m) {
    const int a = static_cast<int>(rng.uniform_int(0, nodes - 1));
    const int b = static_cast<int>(rng.uniform_int(0, nodes - 1));
    if (a != b && !used.count({std::min(a, b), std::max(a, b)})) add_line(a, b);
    if (++guard > 1000 * m) throw Error("gen_uc: cannot place distinct lines");
  }

  // Nodal susceptance matrix, reduced by the reference node, then inverted
  // with Gauss-Jordan elimination (partial pivoting).
  const int r = nodes - 1;
  std::vector<std::vector<double>> red(r, std::vector<double>(2 * r, 0.0));
  for (const Network::Line& ln : net.lines) {
    const double s = ln.susceptance;
    if (ln.from > 0) red[ln.from - 1][ln.from - 1] += s;
    if (ln.to > 0) red[ln.to - 1][ln.to - 1] += s;
    if (ln.from > 0 && ln.to > 0) {
      red[ln.from - 1][ln.to - 1] -= s;
      red[ln.to - 1][ln.from - 1] -= s;
    }
  }
  for (int i = 0; i < r; ++i) red[i][r + i] = 1.0;
  for (int col = 0; col < r; ++col) {
    int piv = col;
    for (int i = col + 1; i < r; ++i)
      if (std::abs(red[i][col]) > std::abs(red[piv][col])) piv = i;
    if (std::abs(red[piv][col]) < 1e-12) throw Error("gen_uc: singular network matrix");
    std::swap(red[piv], red[col]);
    const double inv = 1.0 / red[col][col];
    for (int j = col; j < 2 * r; ++j) red[col][j] *= inv;
    for (int i = 0; i < r; ++i) {
      if (i == col || red[i][col] == 0.0) continue;
      const double f = red[i][col];
      for (int j = col; j < 2 * r; ++j) red[i][j] -= f * red[col][j];
    }
  }

  // Angle at node v for a unit injection at node i is binv[v-1][i-1].
  auto angle = [&](int v, int i) {
    return (v == 0 || i == 0) ? 0.0 : red[v - 1][r + (i - 1)];
  };
  net.ptdf.assign(m, std::vector<double>(nodes, 0.0));
  for (int j = 0; j < m; ++j) {
    const Network::Line& ln = net.lines[j];
    for (int i = 0; i < nodes; ++i)
      net.ptdf[j][i] = ln.susceptance * (angle(ln.from, i) - angle(ln.to, i));
  }
  return net;
}
}  // namespace

std::vector<MilpInstance> gen_uc(const UcConfig& cfg) {
  if (cfg.n < 2 || cfg.m < 1 || cfg.T < 1) throw Error("gen_uc: bad sizes");
  const int n = cfg.n, m = cfg.m;

  // Family-wide data: generator fleet, weights, network, line-rating factors,
  // and per-day demand level factors.
  Rng fam(substream(cfg.seed, {1}));
  std::vector<double> u(n), l(n), c(n), w(n);
  for (int i = 0; i < n; ++i) u[i] = fam.uniform(2.0, 10.0);
  for (int i = 0; i < n; ++i) l[i] = u[i] * fam.uniform(0.25, 0.55);
  for (int i = 0; i < n; ++i) c[i] = fam.uniform(1.0, 6.0);
  for (int i = 0; i < n; ++i) w[i] = fam.uniform(0.5, 1.5);
  const Network net = build_network(fam, n, m);
  std::vector<double> gamma(m);
  for (int j = 0; j < m; ++j) gamma[j] = fam.uniform(0.7, 1.05);
  const int days = (cfg.T + 23) / 24;
  std::vector<double> dayfac(days);
  for (int d = 0; d < days; ++d) dayfac[d] = fam.uniform(0.9, 1.1);

  const double cap = std::accumulate(u.begin(), u.end(), 0.0);
  const double wsum = std::accumulate(w.begin(), w.end(), 0.0);

  // Line ratings calibrated against merit-order dispatch probes at a sweep of
  // demand levels, so a realistic share of lines can actually congest.
  std::vector<double> fmax(m, 0.0);
  std::vector<int> merit(n);
  std::iota(merit.begin(), merit.end(), 0);
  std::stable_sort(merit.begin(), merit.end(), [&](int a, int b) { return c[a] < c[b]; });
  for (int p = 0; p < 8; ++p) {
    const double total = (0.35 + 0.45 * p / 7.0) * cap;
    std::vector<double> x(n, 0.0), d(n);
    for (int i = 0; i < n; ++i) d[i] = total * w[i] / wsum;
    double remaining = total;
    for (int i : merit) {
      x[i] = std::min(u[i], remaining);
      remaining -= x[i];
    }
    for (int j = 0; j < m; ++j) {
      double flow = 0.0;
      for (int i = 0; i < n; ++i) flow += net.ptdf[j][i] * (x[i] - d[i]);
      fmax[j] = std::max(fmax[j], std::abs(flow));
    }
  }
  const double floor_rating = 0.05 * std::accumulate(fmax.begin(), fmax.end(), 0.0) / m;
  std::vector<double> f(m);
  for (int j = 0; j < m; ++j) f[j] = std::max(gamma[j] * fmax[j], floor_rating);

  MilpInstance proto;
  proto.num_continuous = n;
  proto.num_integer = n;
  proto.objective.assign(2 * n, 0.0);
  for (int i = 0; i < n; ++i) proto.objective[i] = c[i];
  for (int i = 0; i < n; ++i) proto.var_bounds.push_back({0.0, u[i]});
  for (int i = 0; i < n; ++i) proto.var_bounds.push_back({0.0, 1.0});

  std::vector<MilpInstance> out;
  for (int t = 0; t < cfg.T; ++t) {
    const double frac =
        std::clamp(0.75 * daily_shape(t % 24) * dayfac[t / 24], 0.30, 0.80);
    const double total = frac * cap;

    bool accepted = false;
    for (int attempt = 0; attempt < kMaxResamples && !accepted; ++attempt) {
      Rng r(substream(cfg.seed, {2, static_cast<std::uint64_t>(t),
                                 static_cast<std::uint64_t>(attempt)}));
      std::vector<double> d(n);
      double mass = 0.0;
      for (int i = 0; i < n; ++i) {
        d[i] = w[i] * r.uniform(0.85, 1.15);
        mass += d[i];
      }
      for (int i = 0; i < n; ++i) d[i] *= total / mass;

      MilpInstance inst = proto;
      inst.name = indexed_name(cfg.prefix, t);
      inst.theta = d;

      // Rows: balance equality pair, then a +/- pair per line (learnable),
      // then the on/off linking rows.
      RawConstraint balance;
      for (int i = 0; i < n; ++i) balance.coeffs.push_back({i, 1.0});
      balance.sense = Sense::Equal;
      balance.rhs = total;
      for (Constraint& row : canonicalize(balance)) inst.constraints.push_back(std::move(row));
      for (int j = 0; j < m; ++j) {
        double shift = 0.0;
        RawConstraint up;
        for (int i = 0; i < n; ++i) {
          if (net.ptdf[j][i] != 0.0) up.coeffs.push_back({i, net.ptdf[j][i]});
          shift += net.ptdf[j][i] * d[i];
        }
        up.sense = Sense::LessEqual;
        up.rhs = f[j] + shift;
        up.learnable = true;
        RawConstraint down = up;
        for (Term& term : down.coeffs) term.coef = -term.coef;
        down.rhs = f[j] - shift;
        for (Constraint& row : canonicalize(up)) inst.constraints.push_back(std::move(row));
        for (Constraint& row : canonicalize(down)) inst.constraints.push_back(std::move(row));
      }
      for (int i = 0; i < n; ++i) append_linking_rows(inst.constraints, n, i, l[i], u[i]);

      inst.validate();
      if (screen(inst)) {
        out.push_back(std::move(inst));
        accepted = true;
      }
    }
    if (!accepted)
      throw Error("gen_uc: no feasible draw for instance " + std::to_string(t) + " after " +
                  std::to_string(kMaxResamples) + " attempts");
  }
  return out;
}

}  // namespace warmcg
