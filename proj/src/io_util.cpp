#include "qjl/io_util.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <functional>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "qjl/parallel.hpp"

namespace qjl {

namespace {
std::atomic<int> g_default_threads{0};
}

void set_default_threads(int t) { g_default_threads.store(t); }

int default_threads() {
  int t = g_default_threads.load();
  if (t > 0) return t;
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

void parallel_for(long count, const std::function<void(long)>& fn, int threads) {
  if (count <= 0) return;
  int t = threads > 0 ? threads : default_threads();
  t = static_cast<int>(std::min<long>(t, count));
  if (t <= 1) {
    for (long i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<long> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr err;
  std::mutex err_mu;
  pool.reserve(t);
  for (int w = 0; w < t; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        long i = next.fetch_add(1);
        if (i >= count) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lk(err_mu);
          if (!err) err = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

double pairwise_sum(const std::vector<double>& v) {
  // Fixed binary reduction tree: result independent of how the values were produced.
  std::function<double(size_t, size_t)> rec = [&](size_t lo, size_t hi) -> double {
    if (hi - lo == 0) return 0.0;
    if (hi - lo == 1) return v[lo];
    size_t mid = lo + (hi - lo) / 2;
    return rec(lo, mid) + rec(mid, hi);
  };
  return rec(0, v.size());
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {
std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    out += c;
    if (c == '"') out += '"';
  }
  out += '"';
  return out;
}
}  // namespace

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  std::ofstream f(path, std::ios::binary);  // binary: identical bytes on every platform
  if (!f) throw std::runtime_error("write_csv: cannot open " + path);
  for (size_t i = 0; i < header.size(); ++i) f << (i ? "," : "") << csv_quote(header[i]);
  f << "\n";
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) f << (i ? "," : "") << csv_quote(row[i]);
    f << "\n";
  }
}

namespace {
using nlohmann::json;

Frequency frequency_from_json(const json& j) {
  double a = j.value("dioph_a", 0.05), A = j.value("dioph_A", 2.0);
  long K = j.value("check_horizon", 1000L);
  const json& w = j.at("omega");
  if (w.is_number()) return Frequency(w.get<double>(), a, A, K);
  Eigen::VectorXd v(w.size());
  for (size_t i = 0; i < w.size(); ++i) v[static_cast<Eigen::Index>(i)] = w[i].get<double>();
  return Frequency(v, a, A, K);
}

TrigMatrixPolynomial coeff_table(const json& arr, int d, int b) {
  TrigMatrixPolynomial F(d, b);
  for (const auto& e : arr) {
    std::vector<int> k = e.at("k").get<std::vector<int>>();
    if (static_cast<int>(k.size()) != 1 || b != 1)
      throw std::invalid_argument("model_from_json: custom models are single-frequency");
    F.add_entry(k[0], e.at("row").get<int>(), e.at("col").get<int>(),
                Complex(e.value("re", 0.0), e.value("im", 0.0)));
  }
  return F;
}
}  // namespace

BlockModel model_from_json_text(const std::string& json_text) {
  json j = json::parse(json_text);
  std::string name = j.at("name").get<std::string>();
  Frequency om = frequency_from_json(j);
  if (name == "amo") return make_amo(j.at("lambda").get<double>(), om);
  if (name == "xy") {
    TrigMatrixPolynomial v = scalar_cosine(j.value("v_amplitude", 1.0));
    return make_xy(j.at("rho").get<double>(), v, om);
  }
  if (name == "skewshift_dual")
    return make_skewshift_dual(j.at("lambda").get<double>(), j.at("p").get<long>(),
                               j.at("q").get<long>(), om);
  if (name == "dirac_harper") return make_dirac_harper(j.at("lambda").get<double>(), om);
  if (name == "aa")
    return make_aa(j.at("l1").get<double>(), j.at("l2").get<double>(), j.at("l3").get<double>(),
                   j.at("rho").get<double>(), om);
  if (name == "ab")
    return make_ab(j.at("l1").get<double>(), j.at("l2").get<double>(), j.at("l3").get<double>(),
                   j.at("rho").get<double>(), om);
  if (name == "coupled_harper")
    return make_coupled_harper(j.at("l1").get<double>(), j.at("l2").get<double>(),
                               j.at("coupling").get<double>(), om);
  if (name == "longrange") {
    std::vector<Complex> v;
    for (const auto& e : j.at("v")) v.emplace_back(e.value("re", 0.0), e.value("im", 0.0));
    TrigMatrixPolynomial g(1, 1);
    for (const auto& e : j.at("g"))
      g.add_entry(e.at("k")[0].get<int>(), 0, 0, Complex(e.value("re", 0.0), e.value("im", 0.0)));
    g.hermitian = true;
    return longrange_to_block(make_longrange(std::move(v), g, om));
  }
  if (name == "custom") {
    BlockModel m;
    m.d = j.at("d").get<int>();
    m.b = 1;
    m.omega = om;
    m.eta = j.value("eta", 0.5);
    m.eps_lo = j.value("eps_lo", -m.eta);
    m.eps_hi = j.value("eps_hi", m.eta);
    m.B = coeff_table(j.at("B"), m.d, m.b);
    m.V = coeff_table(j.at("V"), m.d, m.b);
    m.V.hermitian = true;
    m.Bstar = star_extension(m.B);
    m.label = j.value("label", std::string("custom"));
    validate_model(m);
    return m;
  }
  throw std::invalid_argument("model_from_json: unknown model name '" + name + "'");
}

BlockModel model_from_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("model_from_json_file: cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return model_from_json_text(ss.str());
}

}  // namespace qjl
