#include "submod/channel.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <thread>

namespace submod {

Elem random_element(const Ring& r, Rng& rng) { return Elem{static_cast<std::uint32_t>(rng.below(r.size()))}; }

Elem random_unit(const Ring& r, Rng& rng) {
  for (;;) {
    const Elem a = random_element(r, rng);
    if (r.is_unit(a)) return a;
  }
}

Matrix random_matrix(const RingPtr& r, std::size_t rows, std::size_t cols, Rng& rng) {
  Matrix m(r, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m.set(i, j, random_element(*r, rng));
  return m;
}

Matrix random_invertible(const RingPtr& r, std::size_t N, Rng& rng) {
  const Ring& ring = *r;
  Matrix p = Matrix::identity(r, N);
  if (N == 0) return p;
  const std::size_t ops = 2 * N * N + 1;
  for (std::size_t s = 0; s < ops; ++s) {
    const std::size_t i = rng.below(N);
    std::size_t j = N > 1 ? rng.below(N - 1) : 0;
    if (j >= i) ++j;
    const unsigned kind = N > 1 ? static_cast<unsigned>(rng.below(4)) : 1;
    switch (kind) {
      case 0:
        std::swap(p.row(i), p.row(j));
        break;
      case 1:
        p.row(i) = scale_row(ring, random_unit(ring, rng), p.row(i));
        break;
      case 2:
        p.row(i) = axpy(ring, p.row(i), random_element(ring, rng), p.row(j));
        break;
      default: {
        const std::size_t col = rng.below(N);
        const Transform2 tr = ring.stab2(p.at(i, col), p.at(j, col));
        Row ri = axpy(ring, scale_row(ring, tr.x, p.row(i)), tr.y, p.row(j));
        Row rj = axpy(ring, scale_row(ring, tr.z, p.row(i)), tr.t, p.row(j));
        p.row(i) = std::move(ri);
        p.row(j) = std::move(rj);
      }
    }
  }
  return p;
}

Matrix sample_transfer(const RingPtr& r, std::size_t N, std::size_t t, Rng& rng) {
  if (t > N) throw DomainError("sample_transfer: t must not exceed N");
  const Matrix p = random_invertible(r, N, rng);
  return sub_matrix(p, 0, N - t, N, t);
}

Matrix sample_free_rows(const RingPtr& r, unsigned v, std::size_t n, Rng& rng) {
  if (v > n) throw DomainError("sample_free_rows: v must not exceed n");
  const unsigned target = v * r->length();
  for (;;) {
    Matrix m = random_matrix(r, v, n, rng);
    const auto form = row_echelon(m);
    unsigned len = 0;
    for (std::size_t i = 0; i < form.base.rows(); ++i) len += r->ideal_length(form.pivot(i));
    if (len == target) return m;
  }
}

Matrix sample_noise(const RingPtr& r, std::size_t N, std::size_t n, unsigned v, Rng& rng) {
  if (v > N || v > n) throw DomainError("sample_noise: v must not exceed min(N, n)");
  Matrix z(r, N, n);
  const Matrix rows = sample_free_rows(r, v, n, rng);
  std::vector<std::size_t> slots(N);
  std::iota(slots.begin(), slots.end(), std::size_t{0});
  for (std::size_t i = 0; i < v; ++i) std::swap(slots[i], slots[i + rng.below(N - i)]);
  for (std::size_t i = 0; i < v; ++i) z.row(slots[i]) = rows.row(i);
  return z;
}

SubModule corrupt_within_radius(const Code& code, std::size_t index, Rng& rng) {
  const SubModule& word = code.words().at(index);
  const RingPtr& r = word.ambient().ring;
  const unsigned radius = code.radius();
  const std::size_t n = word.ambient().n;
  for (int attempt = 0; attempt < 64 && radius > 0; ++attempt) {
    Matrix g(r, 0, n);
    for (const auto& row : word.basis().row_list()) {
      const std::uint64_t roll = rng.below(4);
      if (roll == 0) continue;
      g.append_row(roll == 1 ? scale_row(*r, random_element(*r, rng), row) : row);
    }
    const std::uint64_t extra = rng.below(3);
    for (std::uint64_t k = 0; k < extra; ++k) {
      Row v(n);
      for (auto& x : v) x = random_element(*r, rng);
      if (rng.coin()) v = scale_row(*r, random_element(*r, rng), v);
      g.append_row(std::move(v));
    }
    SubModule received = SubModule::from_generators(word.ambient(), g);
    const auto le = loss_and_error(word, received);
    if (le.rho + le.e <= radius) return received;
  }
  return word;
}

void validate(const ChannelConfig& c) {
  if (!c.ring) throw DomainError("channel: ring is required");
  if (!c.code) throw DomainError("channel: a code is required");
  const Ambient& amb = c.code->ambient();
  if (!amb.ring->same_as(*c.ring)) throw DomainError("channel: code ring differs from " + c.ring->name());
  if (!amb.is_full()) throw DomainError("channel: the code ambient must be R^n");
  if (amb.n != c.n) throw DomainError("channel: code word length differs from n");
  if (c.model == NoiseModel::within_radius) return;
  if (c.t > c.N) throw DomainError("channel: t must not exceed N");
  if (c.v > c.N || c.v > c.n) throw DomainError("channel: v must not exceed min(N, n)");
  for (const auto& w : c.code->words())
    if (w.basis().rows() > c.t) throw DomainError("channel: a codeword needs more than t generator rows");
}

namespace {

TrialReport run_one(const ChannelConfig& c, std::size_t trial) {
  Rng rng(derive_seed(c.seed, trial));
  const Code& code = *c.code;
  TrialReport rep;
  rep.trial = trial;
  rep.sent = rng.below(code.size());
  const SubModule& word = code.words()[rep.sent];
  SubModule received = word;
  if (c.model == NoiseModel::within_radius) {
    received = corrupt_within_radius(code, rep.sent, rng);
  } else {
    Matrix x(c.ring, c.t, c.n);
    for (std::size_t i = 0; i < word.basis().rows(); ++i) x.row(i) = word.basis().row(i);
    const Matrix a = sample_transfer(c.ring, c.N, c.t, rng);
    const Matrix z = sample_noise(c.ring, c.N, c.n, c.v, rng);
    Matrix y = multiply(a, x);
    for (std::size_t i = 0; i < c.N; ++i) y.row(i) = axpy(*c.ring, y.row(i), c.ring->one(), z.row(i));
    received = SubModule::from_generators(word.ambient(), y);
  }
  const auto le = loss_and_error(word, received);
  rep.rho = le.rho;
  rep.e = le.e;
  const auto d = decode_min_distance(code, received);
  rep.status = d.status;
  rep.decoded = d.index;
  rep.success = d.status == DecodeStatus::decoded && d.index == rep.sent;
  rep.certified = d.certified;
  rep.nearest = d.distance;
  rep.second = d.second_distance;
  return rep;
}

}  // namespace

SimulationSummary run_trials(const ChannelConfig& c) {
  SimulationSummary out;
  if (c.trials == 0) return out;
  validate(c);
  out.reports.resize(c.trials);
  const unsigned workers = std::max(1u, std::min<unsigned>(c.threads, static_cast<unsigned>(c.trials)));
  if (workers == 1) {
    for (std::size_t i = 0; i < c.trials; ++i) out.reports[i] = run_one(c, i);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i = w; i < c.trials; i += workers) out.reports[i] = run_one(c, i);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    for (auto& th : pool) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }
  const unsigned d = c.code->min_distance();
  double rho = 0, e = 0;
  for (const auto& r : out.reports) {
    if (r.success) ++out.successes;
    if (r.success && r.certified) ++out.certified_successes;
    if (2 * (r.rho + r.e) < d) {
      ++out.within_radius;
      if (!r.success || !r.certified) ++out.radius_violations;
    }
    rho += r.rho;
    e += r.e;
  }
  out.trials = c.trials;
  const double t = static_cast<double>(c.trials);
  out.success_rate = static_cast<double>(out.successes) / t;
  out.certified_rate = static_cast<double>(out.certified_successes) / t;
  out.mean_rho = rho / t;
  out.mean_e = e / t;
  return out;
}

std::size_t trapping_rows(const TrappingParams& p) { return p.t + p.v > p.N ? p.N - p.u : p.t; }

namespace {

void check_trapping_params(const Ring& r, const TrappingParams& p) {
  if (!r.chain()) throw DomainError("error trapping: " + r.name() + " is not a chain ring");
  if (p.n < 2 * p.N) throw DomainError("error trapping: need n >= 2N");
  if (p.t > p.N) throw DomainError("error trapping: need t <= N");
  if (p.v > p.N) throw DomainError("error trapping: need v <= N");
  if (p.u < p.v) throw DomainError("error trapping: need u >= v");
  if (p.u >= p.n || p.u > p.N) throw DomainError("error trapping: u too large");
  const std::size_t rows = trapping_rows(p);
  if (rows == 0 || rows > p.n - p.u) throw DomainError("error trapping: empty or oversized X-bar shape");
}

}  // namespace

SubModule pad_trapping_word(const Ambient& ambient, std::size_t u, const Matrix& xbar) {
  Matrix g(ambient.ring, 0, ambient.n);
  for (const auto& row : xbar.row_list()) {
    Row padded(u, Elem{0});
    padded.insert(padded.end(), row.begin(), row.end());
    g.append_row(std::move(padded));
  }
  return SubModule::from_generators(ambient, g);
}

TrappingCodebook error_trapping_codebook(const RingPtr& ring, const TrappingParams& p) {
  check_trapping_params(*ring, p);
  const std::size_t rows = trapping_rows(p), cols = p.n - p.u;
  const std::uint64_t q = ring->size();
  std::vector<Matrix> xbars;
  std::vector<std::size_t> pivots(rows);
  std::function<void(std::size_t, std::size_t)> choose = [&](std::size_t i, std::size_t from) {
    if (i == rows) {
      std::vector<std::pair<std::size_t, std::size_t>> free;
      for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t j = pivots[r] + 1; j < cols; ++j)
          if (std::find(pivots.begin(), pivots.end(), j) == pivots.end()) free.emplace_back(r, j);
      double total = 1;
      for (std::size_t k = 0; k < free.size(); ++k) total *= static_cast<double>(q);
      if (xbars.size() + total > static_cast<double>(kDefaultModuleCap))
        throw DomainError("error trapping: codebook above the enumeration cap");
      Matrix m(ring, rows, cols);
      for (std::size_t r = 0; r < rows; ++r) m.set(r, pivots[r], ring->one());
      std::vector<std::uint64_t> digits(free.size(), 0);
      for (;;) {
        for (std::size_t k = 0; k < free.size(); ++k)
          m.set(free[k].first, free[k].second, Elem{static_cast<std::uint32_t>(digits[k])});
        if (rref(m).base == m) xbars.push_back(m);
        std::size_t k = free.size();
        while (k > 0 && ++digits[k - 1] == q) digits[--k] = 0;
        if (k == 0) break;
      }
      return;
    }
    for (std::size_t j = from; j + (rows - i) <= cols; ++j) {
      pivots[i] = j;
      choose(i + 1, j + 1);
    }
  };
  choose(0, 0);
  const Ambient amb = Ambient::full(ring, p.n);
  std::vector<SubModule> words;
  words.reserve(xbars.size());
  for (const auto& x : xbars) words.push_back(pad_trapping_word(amb, p.u, x));
  return TrappingCodebook{Code::from_words(std::move(words)), std::move(xbars), p.u, rows, cols};
}

namespace {

void check_trapping_instance(const TrappingCodebook& book, const TrappingParams& p, std::size_t w, const Matrix& h,
                             const Matrix& k, Rng& rng, TrappingReport& rep) {
  const RingPtr& ring = book.code.ambient().ring;
  Matrix b(ring, p.N, p.n);
  for (std::size_t i = 0; i < p.v; ++i) {
    for (std::size_t j = 0; j < p.u; ++j) b.set(i, j, h.at(i, j));
    for (std::size_t j = 0; j < p.n - p.u; ++j) b.set(i, p.u + j, k.at(i, j));
  }
  for (std::size_t i = 0; i < book.rows; ++i)
    for (std::size_t j = 0; j < p.n - p.u; ++j) b.set(p.v + i, p.u + j, book.xbars[w].at(i, j));
  const Matrix y = multiply(random_invertible(ring, p.N, rng), b);
  const SubModule received = SubModule::from_generators(book.code.ambient(), y);
  ++rep.instances;
  const unsigned dx = distance(received, book.code.words()[w]);
  for (std::size_t o = 0; o < book.code.size(); ++o) {
    ++rep.comparisons;
    const unsigned dt = distance(received, book.code.words()[o]);
    const bool ok = o == w ? dt == dx : dt > dx;
    if (!ok) {
      ++rep.violations;
      if (rep.details.size() < 8)
        rep.details.push_back("word " + std::to_string(w) + " vs " + std::to_string(o) + ": d=" + std::to_string(dt) +
                              " against " + std::to_string(dx));
    }
  }
}

TrappingCodebook checked_codebook(const RingPtr& ring, const TrappingParams& p) {
  check_trapping_params(*ring, p);
  if (!(p.t + p.v == p.N || (p.u == p.v && p.t + p.v > p.N)))
    throw DomainError("error trapping: need t+v = N, or u = v and t+v > N");
  return error_trapping_codebook(ring, p);
}

/// Calls fn for every rows×cols matrix over r.
void for_each_matrix(const RingPtr& r, std::size_t rows, std::size_t cols, const std::function<void(const Matrix&)>& fn) {
  Matrix m(r, rows, cols);
  const std::size_t cells = rows * cols;
  std::vector<std::uint32_t> digits(cells, 0);
  for (;;) {
    for (std::size_t c = 0; c < cells; ++c) m.set(c / cols, c % cols, Elem{digits[c]});
    fn(m);
    std::size_t c = cells;
    while (c > 0 && ++digits[c - 1] == r->size()) digits[--c] = 0;
    if (c == 0) return;
  }
}

}  // namespace

TrappingReport check_trapping_is_min_distance(const RingPtr& ring, const TrappingParams& p,
                                              std::size_t instances_per_word, std::uint64_t seed) {
  const TrappingCodebook book = checked_codebook(ring, p);
  TrappingReport rep;
  rep.codewords = book.code.size();
  for (std::size_t w = 0; w < book.xbars.size(); ++w)
    for (std::size_t s = 0; s < instances_per_word; ++s) {
      Rng rng(derive_seed(seed, w * instances_per_word + s));
      const Matrix h = sample_free_rows(ring, p.v, p.u, rng);
      const Matrix k = random_matrix(ring, p.v, p.n - p.u, rng);
      check_trapping_instance(book, p, w, h, k, rng, rep);
    }
  return rep;
}

TrappingReport check_trapping_exhaustive(const RingPtr& ring, const TrappingParams& p, std::uint64_t seed,
                                         std::uint64_t cap) {
  const TrappingCodebook book = checked_codebook(ring, p);
  const double per_word = std::pow(static_cast<double>(ring->size()), static_cast<double>(p.v * p.n));
  if (per_word * static_cast<double>(book.code.size()) > static_cast<double>(cap))
    throw DomainError("error trapping: exhaustive check above the cap");
  std::vector<Matrix> hs;
  const unsigned free_len = p.v * ring->length();
  for_each_matrix(ring, p.v, p.u, [&](const Matrix& h) {
    if (SubModule::from_generators(Ambient::full(ring, p.u), h).length() == free_len) hs.push_back(h);
  });
  TrappingReport rep;
  rep.codewords = book.code.size();
  Rng rng(seed);
  for (std::size_t w = 0; w < book.xbars.size(); ++w)
    for (const auto& h : hs)
      for_each_matrix(ring, p.v, p.n - p.u, [&](const Matrix& k) { check_trapping_instance(book, p, w, h, k, rng, rep); });
  return rep;
}

}  // namespace submod
