#include "topomagic/analytic.hpp"

#include <cmath>
#include <initializer_list>
#include <map>

#include "topomagic/errors.hpp"

namespace topomagic {

namespace {

const double kT = std::log2(4.0 / 3.0);

double p4(double x) { return x * x * x * x; }

// Horner evaluation of sum c_k g^k in extended precision.
long double horner(const std::map<int, long double>& coeffs, long double g) {
  const int top = coeffs.rbegin()->first;
  long double acc = 0.0L;
  for (int k = top; k >= 0; --k) {
    auto it = coeffs.find(k);
    acc = acc * g + (it == coeffs.end() ? 0.0L : it->second);
  }
  return acc;
}

struct Pair {
  long double c;
  int p, q;  // c g^p (1 + g^q)
};

std::map<int, long double> symmetric(std::initializer_list<Pair> pairs, long double middle) {
  std::map<int, long double> m;
  for (const auto& x : pairs) {
    m[x.p] += x.c;
    m[x.p + x.q] += x.c;
  }
  m[16] += middle;
  return m;
}

struct Xi {
  std::map<int, long double> x1, x2, x3, x4, x5, x6, x7, x8;
};

const Xi& xi() {
  static const Xi t = [] {
    Xi r;
    r.x1 = {{0, 1}, {2, 50}, {3, 88}, {4, 1008}, {5, 1400}, {6, 4974}, {7, 4656}, {8, 8414},
            {9, 4656}, {10, 4974}, {11, 1400}, {12, 1008}, {13, 88}, {14, 50}, {16, 1}};
    r.x2 = symmetric({{1, 0, 32}, {12, 2, 28}, {512, 4, 24}, {512, 5, 22}, {12404, 6, 20}, {12416, 7, 18},
                      {180748, 8, 16}, {173184, 9, 14}, {1474140, 10, 12}, {1244160, 11, 10},
                      {6675904, 12, 8}, {4386304, 13, 6}, {15864100, 14, 4}, {7454464, 15, 2}},
                     20593766);
    r.x3 = {{0, 1}, {2, 42}, {3, 120}, {4, 960}, {5, 1432}, {6, 4982}, {7, 4592}, {8, 8510},
            {9, 4592}, {10, 4982}, {11, 1432}, {12, 960}, {13, 120}, {14, 42}, {16, 1}};
    r.x4 = symmetric({{1, 0, 32}, {40, 2, 28}, {1152, 4, 24}, {704, 5, 22}, {26312, 6, 20}, {27200, 7, 18},
                      {372940, 8, 16}, {361280, 9, 14}, {2860472, 10, 12}, {2354624, 11, 10},
                      {12046912, 12, 8}, {7656320, 13, 6}, {27796312, 14, 4}, {13192832, 15, 2}},
                     36475110);
    r.x5 = {{0, 1}, {4, 280}, {6, 5376}, {8, 75292}, {10, 596736}, {12, 2743720}, {14, 6193152},
            {16, 7644742}, {18, 6193152}, {20, 2743720}, {22, 596736}, {24, 75292}, {26, 5376},
            {28, 280}, {32, 1}};
    r.x6 = {{0, 1}, {2, 24}, {3, 64}, {4, 612}, {5, 1536}, {6, 4232}, {7, 6080}, {8, 7670},
            {9, 6080}, {10, 4232}, {11, 1536}, {12, 612}, {13, 64}, {14, 24}, {16, 1}};
    r.x7 = symmetric({{1, 0, 32}, {24, 2, 28}, {992, 4, 24}, {384, 5, 22}, {20104, 6, 20}, {20608, 7, 18},
                      {266540, 8, 16}, {350848, 9, 14}, {2111960, 10, 12}, {2838400, 11, 10},
                      {9530464, 12, 8}, {10729216, 13, 6}, {23263112, 14, 4}, {20139264, 15, 2}},
                     31325478);
    r.x8 = symmetric({{1, 0, 32}, {84, 2, 28}, {3104, 4, 24}, {512, 5, 22}, {66428, 6, 20}, {34432, 7, 18},
                      {836588, 8, 16}, {588416, 9, 14}, {5723540, 10, 12}, {4027392, 11, 10},
                      {22005536, 12, 8}, {13395456, 13, 6}, {48727708, 14, 4}, {23896832, 15, 2}},
                     63377830);
    return r;
  }();
  return t;
}

}  // namespace

double ghz_doped_sre(std::size_t length, double theta) {
  const double lt = static_cast<double>(length) * theta;
  return -std::log2((1.0 + p4(std::cos(lt)) + p4(std::sin(lt))) / 2.0);
}

ProductSre product_doped_sre(std::size_t length, std::size_t region_size, double theta) {
  if (region_size > length) throw DimensionError("region larger than the chain");
  const double c = std::cos(theta), s = std::sin(theta);
  const double num = 1.0 + p4(c) + p4(s);
  return {-static_cast<double>(length) * std::log2(num / 2.0),
          -static_cast<double>(region_size) * std::log2(num / (1.0 + c * c + s * s))};
}

double cluster_doped_sre(std::size_t length) {
  const double l = static_cast<double>(length);
  return (length % 2 == 0 ? l : l - 2.0) * kT;
}

double cluster_doped_region_sre(std::size_t region_size, std::size_t deficit) {
  return (static_cast<double>(region_size) - static_cast<double>(deficit)) * kT;
}

std::vector<TableEntry> fixed_point_tables() {
  const Geometry q = Geometry::quad, t = Geometry::tri;
  return {
      {q, "S_topo", "PM", 0, 0},       {q, "S_topo", "FM", 0, 0},       {q, "S_topo", "CL", 2, 2},
      {q, "M_topo N_T=0", "PM", 0, 0}, {q, "M_topo N_T=0", "FM", 0, 0}, {q, "M_topo N_T=0", "CL", 0, 0},
      {q, "M_topo N_T=1", "PM", 0, 0}, {q, "M_topo N_T=1", "FM", 0, 0}, {q, "M_topo N_T=1", "CL", 0, 0},
      {q, "M_topo N_T=L", "PM", 0, 0}, {q, "M_topo N_T=L", "FM", 0, 0}, {q, "M_topo N_T=L", "CL", 2 * kT, 2 * kT},
      {t, "S_topo", "PM", 0, 0},       {t, "S_topo", "FM", 1, 1},       {t, "S_topo", "CL", 2, 2},
      {t, "M_topo N_T=0", "PM", 0, 0}, {t, "M_topo N_T=0", "FM", 0, 0}, {t, "M_topo N_T=0", "CL", 0, 0},
      {t, "M_topo N_T=1", "PM", 0, 0}, {t, "M_topo N_T=1", "FM", kT, kT}, {t, "M_topo N_T=1", "CL", 0, 0},
      {t, "M_topo N_T=L", "PM", 0, 0}, {t, "M_topo N_T=L", "FM", 0, kT},  {t, "M_topo N_T=L", "CL", 2 * kT, 2 * kT},
  };
}

PartitionSpec tci_l8_partition(Geometry g) {
  return g == Geometry::quad ? PartitionSpec::quad(8) : PartitionSpec::custom(Geometry::tri, {2, 4, 2});
}

double tci_l8_closed_form(double g, Geometry geometry) {
  const Xi& x = xi();
  const long double gg = g;
  const long double x1 = horner(x.x1, gg), x2 = horner(x.x2, gg), x3 = horner(x.x3, gg), x4 = horner(x.x4, gg);
  const long double x5 = horner(x.x5, gg), x6 = horner(x.x6, gg), x7 = horner(x.x7, gg), x8 = horner(x.x8, gg);
  if (geometry == Geometry::quad) {
    return static_cast<double>(-std::log2((x3 * x6 * x8 * x2) / (x4 * x7 * x1 * x1)));
  }
  const long double nm = (std::pow(1.0L + gg, 8) + std::pow(1.0L - gg, 8)) / 2.0L;
  return static_cast<double>(std::log2((nm * nm * x2 * x2 * x3) / (x1 * x1 * x4 * x5)));
}

PauliString default_edge_string(std::size_t length) {
  if (length < 3) throw DimensionError("edge string needs L >= 3");
  PauliString p;
  p.ops[0] = 3;
  std::size_t c = 1;
  for (; c + 1 < length; c += 2) p.ops[c] = 1;
  p.ops[c - 1] = 3;  // last stabilizer's right Z
  return p;
}

double edge_correlator(const Mps& psi, const PauliString& p) { return expect_pauli(psi, p).real(); }

}  // namespace topomagic
