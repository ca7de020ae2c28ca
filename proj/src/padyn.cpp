#include "perdyn/padyn.hpp"

#include <algorithm>
#include <exception>
#include <mutex>

namespace perdyn {

std::string format_elem(const FieldCtx& k, const FieldElem& a) { return k.format(a); }

std::uint32_t point_index(const FieldCtx& ctx, const P1Point<FieldElem>& pt) {
  return static_cast<std::uint32_t>(pt ? ctx.index(*pt) : ctx.size());
}

P1Point<FieldElem> point_at(const FieldCtx& ctx, std::uint32_t idx) {
  if (idx == ctx.size()) return std::nullopt;
  return ctx.element(idx);
}

namespace {

std::uint32_t checked_points(const FieldCtx& ctx) {
  const std::uint64_t q = ctx.size();
  if (q >= 0xffffffffULL) raise(Errc::TooLarge, "P^1 over " + ctx.describe() + " is too large to tabulate");
  return static_cast<std::uint32_t>(q + 1);
}

}  // namespace

SuccTable successor_table(const RationalMap& map, const FieldCtx& ctx) {
  if (!(map.field() == ctx)) raise(Errc::FieldMismatch, "map coefficients are not in " + ctx.describe());
  const std::uint32_t n = checked_points(ctx);
  SuccTable out(n);
  for (std::uint32_t i = 0; i < n; ++i) out[i] = point_index(ctx, map(point_at(ctx, i)));
  return out;
}

GraphStats graph_stats(const SuccTable& table) {
  const std::size_t n = table.size();
  std::vector<std::uint32_t> indeg(n, 0), rank(n, 0), queue;
  queue.reserve(n);
  for (auto v : table) ++indeg[v];
  for (std::size_t i = 0; i < n; ++i)
    if (indeg[i] == 0) queue.push_back(static_cast<std::uint32_t>(i));
  std::vector<bool> tail(n, false);
  for (std::size_t h = 0; h < queue.size(); ++h) {
    const std::uint32_t u = queue[h];
    tail[u] = true;
    const std::uint32_t v = table[u];
    rank[v] = std::max(rank[v], rank[u] + 1);
    if (--indeg[v] == 0) queue.push_back(v);
  }

  GraphStats st;
  st.n_points = n;
  st.periodic_count = n - queue.size();

  std::uint32_t max_rank = 0;
  for (auto u : queue) max_rank = std::max(max_rank, rank[u]);
  std::vector<std::uint64_t> at_least(static_cast<std::size_t>(max_rank) + 2, 0);
  for (auto u : queue) ++at_least[rank[u]];
  for (std::size_t k = at_least.size() - 1; k-- > 0;) at_least[k] += at_least[k + 1];
  auto size_at = [&](std::size_t k) {
    return st.periodic_count + (k < at_least.size() ? at_least[k] : 0);
  };
  st.image_sizes.push_back(size_at(1));
  for (std::size_t k = 2;; ++k) {
    const std::uint64_t s = size_at(k);
    st.image_sizes.push_back(s);
    if (s == st.image_sizes[st.image_sizes.size() - 2]) break;
  }

  std::vector<bool> seen(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (tail[i] || seen[i]) continue;
    std::uint64_t len = 0;
    for (std::size_t v = i; !seen[v]; v = table[v]) {
      seen[v] = true;
      ++len;
    }
    st.cycle_lengths.push_back(len);
  }
  std::sort(st.cycle_lengths.rbegin(), st.cycle_lengths.rend());
  return st;
}

std::uint64_t image_size(const SuccTable& table, int n) {
  if (n < 1) raise(Errc::InvalidArgument, "iterate must be >= 1");
  std::vector<char> cur(table.size(), 1), next(table.size());
  for (int round = 0; round < n; ++round) {
    std::fill(next.begin(), next.end(), 0);
    for (std::size_t i = 0; i < table.size(); ++i)
      if (cur[i]) next[table[i]] = 1;
    cur.swap(next);
  }
  return static_cast<std::uint64_t>(std::count(cur.begin(), cur.end(), 1));
}

std::uint64_t image_size(const RationalMap& map, const FieldCtx& ctx, int n) {
  return image_size(successor_table(map, ctx), n);
}

std::uint64_t periodic_count(const SuccTable& table, PeelScratch& s) {
  const std::size_t n = table.size();
  s.indeg.assign(n, 0);
  s.queue.clear();
  s.queue.reserve(n);
  for (auto v : table) ++s.indeg[v];
  for (std::size_t i = 0; i < n; ++i)
    if (s.indeg[i] == 0) s.queue.push_back(static_cast<std::uint32_t>(i));
  for (std::size_t h = 0; h < s.queue.size(); ++h) {
    const std::uint32_t v = table[s.queue[h]];
    if (--s.indeg[v] == 0) s.queue.push_back(v);
  }
  return n - s.queue.size();
}

// ---------------------------------------------------------------------------

UnicriticalSweep::UnicriticalSweep(const FieldCtx& ctx, unsigned d)
    : ctx_(ctx), d_(d), n_points_(checked_points(ctx)), adder_(ctx) {
  const std::uint64_t q = ctx.size();
  power_chunks_.assign(static_cast<std::size_t>(adder_.chunks()), std::vector<std::uint16_t>(q));
  for (int j = 0; j < adder_.chunks(); ++j)
    if (adder_.chunk_radix(j) > 65536) raise(Errc::TooLarge, "characteristic too large for the sweep tables");
  for (std::uint64_t i = 0; i < q; ++i) {
    const std::uint64_t idx = ctx.index(ctx.pow(ctx.element(i), static_cast<std::uint64_t>(d)));
    for (int j = 0; j < adder_.chunks(); ++j)
      power_chunks_[static_cast<std::size_t>(j)][i] = static_cast<std::uint16_t>(adder_.chunk_of(idx, j));
  }
}

void UnicriticalSweep::table(std::uint64_t beta, SuccTable& out) const {
  const std::uint32_t q = n_points_ - 1;
  out.resize(n_points_);
  std::vector<std::vector<std::uint32_t>> shift(static_cast<std::size_t>(adder_.chunks()));
  for (int j = 0; j < adder_.chunks(); ++j) {
    const std::uint32_t radix = adder_.chunk_radix(j);
    const std::uint32_t b = adder_.chunk_of(beta, j);
    const auto scale = static_cast<std::uint32_t>(adder_.chunk_scale(j));
    auto& t = shift[static_cast<std::size_t>(j)];
    t.resize(radix);
    for (std::uint32_t u = 0; u < radix; ++u) t[u] = adder_.add_chunk(j, u, b) * scale;
  }
  std::fill(out.begin(), out.begin() + q, 0U);
  for (int j = 0; j < adder_.chunks(); ++j) {
    const auto& t = shift[static_cast<std::size_t>(j)];
    const auto& pc = power_chunks_[static_cast<std::size_t>(j)];
    for (std::uint32_t i = 0; i < q; ++i) out[i] += t[pc[i]];
  }
  out[q] = q;
}

// ---------------------------------------------------------------------------

unsigned default_threads() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t, unsigned)>& fn) {
  if (threads == 0) threads = 1;
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i, 0);
    return;
  }
  std::exception_ptr err;
  std::mutex mu;
  std::vector<std::thread> pool;
  const std::size_t block = (n + threads - 1) / threads;
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      const std::size_t lo = w * block, hi = std::min(n, lo + block);
      try {
        for (std::size_t i = lo; i < hi; ++i) fn(i, w);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!err) err = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace perdyn
