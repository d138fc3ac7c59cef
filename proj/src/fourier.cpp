#include "waveguide/fourier.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <utility>

#include "waveguide/error.hpp"

namespace waveguide {

SpectralField::SpectralField(Geometry geometry, Domain domain,
                             std::vector<Complex> values)
    : geometry_(std::move(geometry)), domain_(domain), values_(std::move(values)) {
  if (values_.size() != geometry_.size()) {
    throw StructuralError("value count " + std::to_string(values_.size()) +
                          " does not match geometry size " +
                          std::to_string(geometry_.size()));
  }
}

SpectralField SpectralField::zeros(const Geometry& geometry, Domain domain) {
  return SpectralField(geometry, domain,
                       std::vector<Complex>(geometry.size(), Complex{}));
}

namespace {

// FFTW's planner is not reentrant; execution of an existing plan on new
// arrays is. Plans are created in place with FFTW_UNALIGNED so that any
// std::vector storage can be passed to fftw_execute_dft.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  fftw_plan get(std::span<const int> dims, int sign) {
    Key key{std::vector<int>(dims.begin(), dims.end()), sign};
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;
    std::size_t total = 1;
    for (int d : dims) total *= static_cast<std::size_t>(d);
    auto* scratch = fftw_alloc_complex(total);
    fftw_plan plan = fftw_plan_dft(static_cast<int>(dims.size()), dims.data(),
                                   scratch, scratch, sign,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(scratch);
    plans_.emplace(std::move(key), plan);
    return plan;
  }

  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

 private:
  using Key = std::pair<std::vector<int>, int>;
  std::mutex mutex_;
  std::map<Key, fftw_plan> plans_;
};

void execute(const Geometry& geometry, std::span<Complex> values, int sign) {
  if (values.size() != geometry.size()) {
    throw StructuralError("buffer size does not match geometry");
  }
  fftw_plan plan = PlanCache::instance().get(geometry.grid_points(), sign);
  auto* data = reinterpret_cast<fftw_complex*>(values.data());
  fftw_execute_dft(plan, data, data);
}

void require_same_geometry(const SpectralField& a, const SpectralField& b) {
  if (!(a.geometry() == b.geometry())) {
    throw StructuralError("operands live on different geometries");
  }
}

}  // namespace

void forward_in_place(const Geometry& geometry, std::span<Complex> values) {
  execute(geometry, values, FFTW_FORWARD);
  const double w = geometry.cell_volume();
  for (auto& v : values) v *= w;
}

void inverse_in_place(const Geometry& geometry, std::span<Complex> values) {
  execute(geometry, values, FFTW_BACKWARD);
  const double w = geometry.frequency_weight();
  for (auto& v : values) v *= w;
}

SpectralField forward_transform(const SpectralField& f) {
  if (f.domain() != Domain::kPhysical) {
    throw PreconditionError("forward_transform expects a physical field");
  }
  std::vector<Complex> buf(f.values().begin(), f.values().end());
  forward_in_place(f.geometry(), buf);
  return SpectralField(f.geometry(), Domain::kFrequency, std::move(buf));
}

SpectralField inverse_transform(const SpectralField& F) {
  if (F.domain() != Domain::kFrequency) {
    throw PreconditionError("inverse_transform expects a frequency field");
  }
  std::vector<Complex> buf(F.values().begin(), F.values().end());
  inverse_in_place(F.geometry(), buf);
  return SpectralField(F.geometry(), Domain::kPhysical, std::move(buf));
}

SpectralField frequency_convolve(const SpectralField& F, const SpectralField& G) {
  require_same_geometry(F, G);
  if (F.domain() != Domain::kFrequency || G.domain() != Domain::kFrequency) {
    throw PreconditionError("frequency_convolve expects frequency fields");
  }
  std::vector<Complex> a(F.values().begin(), F.values().end());
  std::vector<Complex> b(G.values().begin(), G.values().end());
  inverse_in_place(F.geometry(), a);
  inverse_in_place(F.geometry(), b);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] *= b[i];
  forward_in_place(F.geometry(), a);
  return SpectralField(F.geometry(), Domain::kFrequency, std::move(a));
}

double l2_norm(const SpectralField& f) {
  double s = 0.0;
  for (const auto& v : f.values()) s += std::norm(v);
  const double w = f.domain() == Domain::kPhysical
                       ? f.geometry().cell_volume()
                       : f.geometry().frequency_weight();
  return std::sqrt(s * w);
}

Complex inner_product(const SpectralField& a, const SpectralField& b) {
  require_same_geometry(a, b);
  if (a.domain() != b.domain()) {
    throw StructuralError("inner product of fields in different domains");
  }
  Complex s{};
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * std::conj(b[i]);
  const double w = a.domain() == Domain::kPhysical
                       ? a.geometry().cell_volume()
                       : a.geometry().frequency_weight();
  return s * w;
}

SpectralField sample(const Geometry& geometry,
                     const std::function<Complex(std::span<const double>)>& fn) {
  std::vector<Complex> values(geometry.size());
  for_each_point(geometry, [&](std::size_t lin, std::span<const double> z) {
    values[lin] = fn(z);
  });
  return SpectralField(geometry, Domain::kPhysical, std::move(values));
}

SpectralField spectrum(const Geometry& geometry,
                       const std::function<Complex(std::span<const double>)>& fn) {
  std::vector<Complex> values(geometry.size());
  for_each_frequency(geometry, [&](std::size_t lin, std::span<const double> xi) {
    values[lin] = fn(xi);
  });
  return SpectralField(geometry, Domain::kFrequency, std::move(values));
}

SpectralField apply_multiplier(
    const SpectralField& f,
    const std::function<Complex(std::span<const double>)>& symbol) {
  const bool physical = f.domain() == Domain::kPhysical;
  std::vector<Complex> buf(f.values().begin(), f.values().end());
  if (physical) forward_in_place(f.geometry(), buf);
  for_each_frequency(f.geometry(), [&](std::size_t lin, std::span<const double> xi) {
    buf[lin] *= symbol(xi);
  });
  if (physical) inverse_in_place(f.geometry(), buf);
  return SpectralField(f.geometry(), f.domain(), std::move(buf));
}

SpectralField combine(Complex a, const SpectralField& f, Complex b,
                      const SpectralField& g) {
  require_same_geometry(f, g);
  if (f.domain() != g.domain()) {
    throw StructuralError("combining fields in different domains");
  }
  std::vector<Complex> out(f.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a * f[i] + b * g[i];
  return SpectralField(f.geometry(), f.domain(), std::move(out));
}

Complex evaluate_at(const SpectralField& F, std::span<const double> z) {
  if (F.domain() != Domain::kFrequency) {
    throw PreconditionError("evaluate_at expects a frequency field");
  }
  const Geometry& g = F.geometry();
  if (static_cast<int>(z.size()) != g.dims()) {
    throw StructuralError("point rank does not match geometry");
  }
  Complex s{};
  for_each_frequency(g, [&](std::size_t lin, std::span<const double> xi) {
    const Complex& c = F[lin];
    if (c == Complex{}) return;
    double phase = 0.0;
    for (int dir = 0; dir < g.dims(); ++dir) phase += z[dir] * xi[dir];
    s += c * std::polar(1.0, 2.0 * std::numbers::pi * phase);
  });
  return s * g.frequency_weight();
}

std::vector<long> wavenumber_extent(const SpectralField& F) {
  const Geometry& g = F.geometry();
  std::vector<long> extent(g.dims(), -1);
  for_each_site(g, [&](std::size_t lin, std::span<const int> idx) {
    if (F[lin] == Complex{}) return;
    for (int dir = 0; dir < g.dims(); ++dir) {
      const long k = std::labs(g.wavenumber(dir, idx[dir]));
      if (k > extent[dir]) extent[dir] = k;
    }
  });
  return extent;
}

}  // namespace waveguide
