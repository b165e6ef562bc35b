#include "ratsum/counting.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <istream>
#include <map>
#include <ostream>

#include "ratsum/envelopes.hpp"

namespace ratsum {

namespace detail {

std::vector<u64> SparseTable::make_strides(std::span<const i64> lo, std::span<const i64> hi) {
  std::vector<u64> strides(lo.size());
  u128 acc = 1;
  for (std::size_t i = 0; i < lo.size(); ++i) {
    strides[i] = static_cast<u64>(acc);
    u128 size = static_cast<u128>(hi[i] - lo[i]) + 1;
    acc *= size;
    if (acc > (static_cast<u128>(1) << 63))
      raise(errc::capacity_exceeded, "key space exceeds 64-bit packing");
  }
  return strides;
}

bool SparseTable::in_box(std::span<const i64> v) const {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] < lo[i] || v[i] > hi[i]) return false;
  return true;
}

u64 SparseTable::pack(std::span<const i64> v) const {
  u64 key = 0;
  for (std::size_t i = 0; i < v.size(); ++i)
    key += static_cast<u64>(v[i] - lo[i]) * stride[i];
  return key;
}

void SparseTable::unpack(u64 key, std::span<i64> out) const {
  for (std::size_t i = lo.size(); i-- > 0;) {
    u64 digit = key / stride[i];
    key -= digit * stride[i];
    out[i] = lo[i] + static_cast<i64>(digit);
  }
}

u64 SparseTable::lookup(u64 key) const {
  auto it = std::lower_bound(keys.begin(), keys.end(), key);
  if (it == keys.end() || *it != key) return 0;
  return counts[static_cast<std::size_t>(it - keys.begin())];
}

u128 SparseTable::total() const {
  u128 sum = 0;
  for (u64 c : counts) sum += c;
  return sum;
}

void SparseTable::assign_sorted(std::vector<std::pair<u64, u64>>&& buffer) {
  std::sort(buffer.begin(), buffer.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  keys.clear();
  counts.clear();
  for (const auto& [key, count] : buffer) {
    if (!keys.empty() && keys.back() == key) {
      counts.back() += count;
    } else {
      keys.push_back(key);
      counts.push_back(count);
    }
  }
  buffer.clear();
  buffer.shrink_to_fit();
  keys.shrink_to_fit();
  counts.shrink_to_fit();
}

}  // namespace detail

namespace {

u128 u128_pow(u64 base, int exp) {
  u128 acc = 1;
  for (int i = 0; i < exp; ++i) acc *= base;
  return acc;
}

// Per-axis bounds of the k-fold sumset.
void fold_bounds(int k, u64 N, int d, u64 p, Domain domain, std::vector<i64>& lo,
                 std::vector<i64>& hi) {
  lo.assign(static_cast<std::size_t>(d), 0);
  hi.assign(static_cast<std::size_t>(d), 0);
  if (domain == Domain::residue) {
    for (int nu = 0; nu < d; ++nu) hi[static_cast<std::size_t>(nu)] = static_cast<i64>(p) - 1;
    return;
  }
  u128 power = 1;
  for (int nu = 0; nu < d; ++nu) {
    power *= N;
    u128 top = static_cast<u128>(k) * power;
    if (top > static_cast<u128>(INT64_MAX))
      raise(errc::capacity_exceeded, "integer sumset bound exceeds 63 bits");
    lo[static_cast<std::size_t>(nu)] = k;
    hi[static_cast<std::size_t>(nu)] = static_cast<i64>(top);
  }
}

std::vector<std::vector<i64>> single_vectors(u64 N, int d, u64 p, Domain domain) {
  FieldContext ctx{p, d};
  std::vector<std::vector<i64>> singles;
  singles.reserve(N);
  for (u64 n = 1; n <= N; ++n)
    singles.push_back(power_sum_vector(n, ctx, domain).components);
  return singles;
}

}  // namespace

PowerSumDistribution build_folds(int s, u64 N, int d, u64 p, Domain domain,
                                 const Budget& budget) {
  if (s < 1) raise(errc::range_error, "fold count s must be >= 1");
  if (N < 1) raise(errc::range_error, "N must be >= 1");
  if (domain == Domain::residue && N > p)
    raise(errc::range_error, "N = " + std::to_string(N) + " exceeds p = " + std::to_string(p));
  if (static_cast<double>(s) * std::log2(static_cast<double>(N) + 1.0) > 62.0)
    raise(errc::capacity_exceeded, "entry counts would exceed 64 bits");

  auto singles = single_vectors(N, d, p, domain);

  PowerSumDistribution dist;
  dist.ctx_ = FieldContext{p, d};
  dist.s_ = s;
  dist.N_ = N;
  dist.domain_ = domain;

  detail::SparseTable cur;
  fold_bounds(1, N, d, p, domain, cur.lo, cur.hi);
  cur.stride = detail::SparseTable::make_strides(cur.lo, cur.hi);
  {
    std::vector<std::pair<u64, u64>> buffer;
    buffer.reserve(N);
    for (const auto& v : singles) buffer.emplace_back(cur.pack(v), 1);
    cur.assign_sorted(std::move(buffer));
  }

  std::vector<i64> comps(static_cast<std::size_t>(d));
  std::vector<i64> next_comps(static_cast<std::size_t>(d));
  for (int k = 2; k <= s; ++k) {
    u128 projected = static_cast<u128>(cur.keys.size()) * N;
    if (projected > budget.max_table_entries)
      raise(errc::capacity_exceeded,
            "projected " + u128_to_string(projected) + " entries exceeds table budget " +
                std::to_string(budget.max_table_entries));
    detail::SparseTable next;
    fold_bounds(k, N, d, p, domain, next.lo, next.hi);
    next.stride = detail::SparseTable::make_strides(next.lo, next.hi);
    std::vector<std::pair<u64, u64>> buffer;
    buffer.reserve(static_cast<std::size_t>(projected));
    const i64 ip = static_cast<i64>(p);
    for (std::size_t i = 0; i < cur.keys.size(); ++i) {
      cur.unpack(cur.keys[i], comps);
      u64 count = cur.counts[i];
      for (const auto& single : singles) {
        for (int nu = 0; nu < d; ++nu) {
          i64 sum = comps[static_cast<std::size_t>(nu)] + single[static_cast<std::size_t>(nu)];
          if (domain == Domain::residue && sum >= ip) sum -= ip;
          next_comps[static_cast<std::size_t>(nu)] = sum;
        }
        buffer.emplace_back(next.pack(next_comps), count);
      }
    }
    next.assign_sorted(std::move(buffer));
    cur = std::move(next);
  }

  dist.table_ = std::move(cur);
  if (dist.table_.total() != u128_pow(N, s))
    throw std::logic_error("distribution mass is not N^s");
  return dist;
}

PowerSumDistribution PowerSumDistribution::build(int s, u64 N, const FieldContext& ctx,
                                                 Domain domain, const Budget& budget) {
  return build_folds(s, N, ctx.d, ctx.p, domain, budget);
}

u64 PowerSumDistribution::count_at(std::span<const i64> components) const {
  if (components.size() != table_.lo.size()) raise(errc::range_error, "component count mismatch");
  std::vector<i64> v(components.begin(), components.end());
  if (domain_ == Domain::residue)
    for (i64& c : v) c = static_cast<i64>(reduce_mod(c, ctx_.p));
  if (!table_.in_box(v)) return 0;
  return table_.lookup(table_.pack(v));
}

u128 PowerSumDistribution::correlate(const PowerSumDistribution& other,
                                     std::span<const i64> shift) const {
  if (other.domain_ != domain_) raise(errc::range_error, "domain mismatch in correlation");
  if (shift.size() != table_.lo.size()) raise(errc::range_error, "shift length mismatch");

  bool zero_shift = true;
  for (i64 h : shift)
    if (h != 0) zero_shift = false;
  if (zero_shift && &other == this) {
    u128 acc = 0;
    for (u64 c : table_.counts) acc += static_cast<u128>(c) * c;
    return acc;
  }

  std::vector<i64> hs(shift.begin(), shift.end());
  if (domain_ == Domain::residue)
    for (i64& h : hs) h = static_cast<i64>(reduce_mod(h, ctx_.p));

  const std::size_t d = table_.lo.size();
  std::vector<i64> v(d);
  std::vector<i64> w(d);
  const i64 ip = static_cast<i64>(ctx_.p);
  u128 acc = 0;
  for (std::size_t i = 0; i < table_.keys.size(); ++i) {
    table_.unpack(table_.keys[i], v);
    for (std::size_t nu = 0; nu < d; ++nu) {
      i64 t = v[nu] - hs[nu];
      if (domain_ == Domain::residue && t < 0) t += ip;
      w[nu] = t;
    }
    if (!other.table_.in_box(w)) continue;
    u64 hit = other.table_.lookup(other.table_.pack(w));
    if (hit != 0) acc += static_cast<u128>(table_.counts[i]) * hit;
  }
  return acc;
}

namespace {

constexpr char kDistMagic[4] = {'R', 'S', 'D', '1'};

template <typename T>
void write_le(std::ostream& out, T value) {
  static_assert(std::is_trivially_copyable_v<T>);
  char bytes[sizeof(T)];
  std::memcpy(bytes, &value, sizeof(T));
  out.write(bytes, sizeof(T));
}

template <typename T>
T read_le(std::istream& in) {
  char bytes[sizeof(T)];
  in.read(bytes, sizeof(T));
  if (!in) raise(errc::io_error, "unexpected end of distribution stream");
  T value;
  std::memcpy(&value, bytes, sizeof(T));
  return value;
}

}  // namespace

void PowerSumDistribution::save(std::ostream& out) const {
  out.write(kDistMagic, sizeof(kDistMagic));
  write_le<u64>(out, ctx_.p);
  write_le<std::uint32_t>(out, static_cast<std::uint32_t>(ctx_.d));
  write_le<std::uint32_t>(out, static_cast<std::uint32_t>(s_));
  write_le<u64>(out, N_);
  write_le<std::uint8_t>(out, domain_ == Domain::residue ? 0 : 1);
  write_le<u64>(out, table_.keys.size());
  for (std::size_t i = 0; i < table_.keys.size(); ++i) {
    write_le<u64>(out, table_.keys[i]);
    write_le<u64>(out, table_.counts[i]);  // count low half
    write_le<u64>(out, 0);                 // count high half
  }
  if (!out) raise(errc::io_error, "failed to write distribution");
}

PowerSumDistribution PowerSumDistribution::load(std::istream& in) {
  char magic[4];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kDistMagic, sizeof(magic)) != 0)
    raise(errc::schema_error, "bad distribution magic");
  u64 p = read_le<u64>(in);
  auto d = static_cast<int>(read_le<std::uint32_t>(in));
  auto s = static_cast<int>(read_le<std::uint32_t>(in));
  u64 N = read_le<u64>(in);
  std::uint8_t domain_tag = read_le<std::uint8_t>(in);
  if (domain_tag > 1) raise(errc::schema_error, "bad domain tag");
  Domain domain = domain_tag == 0 ? Domain::residue : Domain::integer;
  if (d < 1 || s < 1 || N < 1) raise(errc::schema_error, "bad distribution header");

  PowerSumDistribution dist;
  dist.ctx_ = FieldContext{p, d};
  dist.s_ = s;
  dist.N_ = N;
  dist.domain_ = domain;
  fold_bounds(s, N, d, p, domain, dist.table_.lo, dist.table_.hi);
  dist.table_.stride = detail::SparseTable::make_strides(dist.table_.lo, dist.table_.hi);

  u64 entries = read_le<u64>(in);
  dist.table_.keys.reserve(entries);
  dist.table_.counts.reserve(entries);
  u64 prev_key = 0;
  for (u64 i = 0; i < entries; ++i) {
    u64 key = read_le<u64>(in);
    u64 count_lo = read_le<u64>(in);
    u64 count_hi = read_le<u64>(in);
    if (count_hi != 0) raise(errc::schema_error, "entry count exceeds 64 bits");
    if (i > 0 && key <= prev_key) raise(errc::schema_error, "keys not strictly increasing");
    prev_key = key;
    dist.table_.keys.push_back(key);
    dist.table_.counts.push_back(count_lo);
  }
  if (dist.table_.total() != u128_pow(N, s))
    raise(errc::schema_error, "distribution mass is not N^s");
  return dist;
}

namespace {

double log2_support_direct(int s, u64 N, int d, u64 p, Domain domain) {
  double box;
  if (domain == Domain::residue) {
    box = static_cast<double>(d) * std::log2(static_cast<double>(p));
  } else {
    box = 0;
    for (int nu = 1; nu <= d; ++nu)
      box += std::log2(static_cast<double>(s) * std::pow(static_cast<double>(N), nu) + 1.0);
  }
  return std::min(box, static_cast<double>(s) * std::log2(static_cast<double>(N)));
}

// Difference table of an s-fold distribution: entry at u counts the ordered
// pairs (v, w) of s-fold sums with v - w = u. Built by pair enumeration.
detail::SparseTable difference_table(const PowerSumDistribution& dist, const Budget& budget) {
  const auto& src = dist.table();
  u128 pairs = static_cast<u128>(src.keys.size()) * src.keys.size();
  if (pairs > budget.max_table_entries)
    raise(errc::capacity_exceeded, "difference table needs " + u128_to_string(pairs) +
                                       " pair entries, budget " +
                                       std::to_string(budget.max_table_entries));
  detail::SparseTable diff;
  const std::size_t d = src.lo.size();
  if (dist.domain() == Domain::residue) {
    diff.lo = src.lo;
    diff.hi = src.hi;
  } else {
    diff.lo.resize(d);
    diff.hi.resize(d);
    for (std::size_t i = 0; i < d; ++i) {
      diff.lo[i] = src.lo[i] - src.hi[i];
      diff.hi[i] = src.hi[i] - src.lo[i];
    }
  }
  diff.stride = detail::SparseTable::make_strides(diff.lo, diff.hi);

  std::vector<std::pair<u64, u64>> buffer;
  buffer.reserve(static_cast<std::size_t>(pairs));
  std::vector<i64> v(d), w(d), u(d);
  const i64 ip = static_cast<i64>(dist.context().p);
  for (std::size_t i = 0; i < src.keys.size(); ++i) {
    src.unpack(src.keys[i], v);
    for (std::size_t j = 0; j < src.keys.size(); ++j) {
      src.unpack(src.keys[j], w);
      for (std::size_t nu = 0; nu < d; ++nu) {
        i64 t = v[nu] - w[nu];
        if (dist.domain() == Domain::residue && t < 0) t += ip;
        u[nu] = t;
      }
      buffer.emplace_back(diff.pack(u), src.counts[i] * src.counts[j]);
    }
  }
  diff.assign_sorted(std::move(buffer));
  return diff;
}

u128 count_via_halves(int s, u64 N, const ShiftVector& shift, int d, u64 p, Domain domain,
                      const Budget& budget) {
  int a = (s + 1) / 2;
  int b = s - a;
  PowerSumDistribution ca = build_folds(a, N, d, p, domain, budget);
  PowerSumDistribution cb = build_folds(b, N, d, p, domain, budget);
  detail::SparseTable da = difference_table(ca, budget);
  detail::SparseTable db = difference_table(cb, budget);

  std::vector<i64> u(static_cast<std::size_t>(d));
  std::vector<i64> w(static_cast<std::size_t>(d));
  const i64 ip = static_cast<i64>(p);
  u128 acc = 0;
  for (std::size_t i = 0; i < da.keys.size(); ++i) {
    da.unpack(da.keys[i], u);
    for (std::size_t nu = 0; nu < static_cast<std::size_t>(d); ++nu) {
      i64 t = shift.h[nu] - u[nu];
      if (domain == Domain::residue) {
        t %= ip;
        if (t < 0) t += ip;
      }
      w[nu] = t;
    }
    if (!db.in_box(w)) continue;
    u64 hit = db.lookup(db.pack(w));
    if (hit != 0) acc += static_cast<u128>(da.counts[i]) * hit;
  }
  return acc;
}

CountStrategy pick_strategy(CountStrategy requested, int s, u64 N, int d, u64 p, Domain domain) {
  if (requested != CountStrategy::automatic) return requested;
  if (s < 2) return CountStrategy::direct;
  int a = (s + 1) / 2;
  double direct_peak = log2_support_direct(s, N, d, p, domain);
  double halves_peak = log2_support_direct(2 * a, N, d, p, domain);
  return halves_peak < direct_peak ? CountStrategy::halves : CountStrategy::direct;
}

}  // namespace

u128 count_mod_solutions(int s, u64 N, const ShiftVector& shift, const FieldContext& ctx,
                         const Budget& budget, CountStrategy strategy) {
  ShiftVector hs = shift.flavor == Domain::residue ? shift : reduce_shift(shift, ctx);
  if (hs.h.size() != static_cast<std::size_t>(ctx.d))
    raise(errc::range_error, "shift length must equal d");
  strategy = pick_strategy(strategy, s, N, ctx.d, ctx.p, Domain::residue);
  if (strategy == CountStrategy::halves && s >= 2)
    return count_via_halves(s, N, hs, ctx.d, ctx.p, Domain::residue, budget);
  PowerSumDistribution dist = PowerSumDistribution::build(s, N, ctx, Domain::residue, budget);
  return dist.correlate(dist, hs.h);
}

u128 count_from_distribution(const PowerSumDistribution& dist, const ShiftVector& shift) {
  ShiftVector hs = shift;
  if (dist.domain() == Domain::residue && shift.flavor == Domain::integer)
    hs = reduce_shift(shift, dist.context());
  if (dist.domain() == Domain::integer && shift.flavor == Domain::residue)
    raise(errc::range_error, "integer-domain distribution needs an integer shift");
  if (hs.h.size() != dist.table().lo.size())
    raise(errc::range_error, "shift length must equal d");
  return dist.correlate(dist, hs.h);
}

u128 count_integer_solutions(int s, u64 N, const ShiftVector& shift, const Budget& budget,
                             CountStrategy strategy) {
  if (shift.flavor != Domain::integer)
    raise(errc::range_error, "integer count needs an integer-flavored shift");
  int d = static_cast<int>(shift.h.size());
  if (d < 1) raise(errc::range_error, "shift must have at least one component");
  strategy = pick_strategy(strategy, s, N, d, 0, Domain::integer);
  if (strategy == CountStrategy::halves && s >= 2)
    return count_via_halves(s, N, shift, d, 0, Domain::integer, budget);
  PowerSumDistribution dist = build_folds(s, N, d, 0, Domain::integer, budget);
  return dist.correlate(dist, shift.h);
}

namespace {

u128 count_naive(int s, u64 N, const ShiftVector& shift, int d, u64 p, Domain domain,
                 const Budget& budget) {
  double work = std::pow(static_cast<double>(N), 2.0 * s);
  if (work > static_cast<double>(budget.max_naive_ops))
    raise(errc::work_budget_exceeded,
          "naive enumeration needs ~" + std::to_string(work) + " tuples, budget " +
              std::to_string(budget.max_naive_ops));

  auto singles = single_vectors(N, d, p, domain);
  // Negated copies for the second half of the tuple.
  std::vector<std::vector<i64>> negated(singles);
  for (auto& v : negated)
    for (i64& c : v)
      c = domain == Domain::residue ? (c == 0 ? 0 : static_cast<i64>(p) - c) : -c;

  std::vector<i64> target(shift.h.begin(), shift.h.end());
  if (domain == Domain::residue)
    for (i64& t : target) t = static_cast<i64>(reduce_mod(t, p));

  std::vector<i64> sums(static_cast<std::size_t>(d), 0);
  const i64 ip = static_cast<i64>(p);
  u128 total = 0;

  // Depth-first over the 2s positions, first half adding, second half
  // subtracting; the running sums live in `sums`.
  auto descend = [&](auto&& self, int position) -> void {
    if (position == 2 * s) {
      for (int nu = 0; nu < d; ++nu)
        if (sums[static_cast<std::size_t>(nu)] != target[static_cast<std::size_t>(nu)]) return;
      ++total;
      return;
    }
    const auto& terms = position < s ? singles : negated;
    for (u64 n = 0; n < N; ++n) {
      const auto& term = terms[n];
      for (int nu = 0; nu < d; ++nu) {
        i64& slot = sums[static_cast<std::size_t>(nu)];
        slot += term[static_cast<std::size_t>(nu)];
        if (domain == Domain::residue && slot >= ip) slot -= ip;
      }
      self(self, position + 1);
      for (int nu = 0; nu < d; ++nu) {
        i64& slot = sums[static_cast<std::size_t>(nu)];
        slot -= term[static_cast<std::size_t>(nu)];
        if (domain == Domain::residue && slot < 0) slot += ip;
      }
    }
  };
  descend(descend, 0);
  return total;
}

}  // namespace

u128 count_mod_solutions_naive(int s, u64 N, const ShiftVector& shift, const FieldContext& ctx,
                               const Budget& budget) {
  if (N > ctx.p) raise(errc::range_error, "N exceeds p");
  ShiftVector hs = shift.flavor == Domain::residue ? shift : reduce_shift(shift, ctx);
  return count_naive(s, N, hs, ctx.d, ctx.p, Domain::residue, budget);
}

u128 count_integer_solutions_naive(int s, u64 N, const ShiftVector& shift, const Budget& budget) {
  if (shift.flavor != Domain::integer)
    raise(errc::range_error, "integer count needs an integer-flavored shift");
  return count_naive(s, N, shift, static_cast<int>(shift.h.size()), 0, Domain::integer, budget);
}

WindowSpec make_window(std::span<const u64> sides, const FieldContext& ctx) {
  if (sides.size() != static_cast<std::size_t>(ctx.d))
    raise(errc::range_error, "window needs exactly d side lengths");
  for (u64 h : sides)
    if (h < 1 || h > ctx.p)
      raise(errc::range_error, "window side " + std::to_string(h) + " outside [1, p]");
  return WindowSpec{std::vector<u64>(sides.begin(), sides.end())};
}

i64 window_halfwidth(const WindowSpec& window, std::size_t axis, const FieldContext& ctx) {
  return static_cast<i64>(ctx.p / window.H[axis]);
}

u128 count_window_solutions(int s, u64 N, const WindowSpec& window, const FieldContext& ctx,
                            const Budget& budget) {
  if (window.H.size() != static_cast<std::size_t>(ctx.d))
    raise(errc::range_error, "window needs exactly d side lengths");
  return count_window_solutions(PowerSumDistribution::build(s, N, ctx, Domain::residue, budget),
                                window, budget);
}

u128 count_window_solutions(const PowerSumDistribution& dist, const WindowSpec& window,
                            const Budget& budget) {
  if (dist.domain() != Domain::residue)
    raise(errc::range_error, "windowed counts need a residue-domain distribution");
  const FieldContext& ctx = dist.context();
  if (window.H.size() != static_cast<std::size_t>(ctx.d))
    raise(errc::range_error, "window needs exactly d side lengths");

  // Multiplicity of each residue class inside the integer window, per axis.
  std::vector<std::vector<u64>> mult(static_cast<std::size_t>(ctx.d));
  u128 lattice = 1;
  for (int i = 0; i < ctx.d; ++i) {
    i64 w = window_halfwidth(window, static_cast<std::size_t>(i), ctx);
    auto& m = mult[static_cast<std::size_t>(i)];
    m.assign(ctx.p, 0);
    for (i64 u = -w; u <= w; ++u) ++m[reduce_mod(u, ctx.p)];
    lattice *= static_cast<u128>(2 * w + 1);
  }

  const auto& table = dist.table();
  u128 pair_cost = static_cast<u128>(table.keys.size()) * table.keys.size();
  u128 lattice_cost = lattice * table.keys.size();
  if (pair_cost > budget.max_naive_ops && lattice_cost > budget.max_naive_ops)
    raise(errc::work_budget_exceeded, "window count needs " +
                                          u128_to_string(std::min(pair_cost, lattice_cost)) +
                                          " operations, budget " +
                                          std::to_string(budget.max_naive_ops));

  const std::size_t d = table.lo.size();
  u128 total = 0;
  if (pair_cost <= lattice_cost) {
    std::vector<i64> v(d), w(d);
    const i64 ip = static_cast<i64>(ctx.p);
    for (std::size_t i = 0; i < table.keys.size(); ++i) {
      table.unpack(table.keys[i], v);
      for (std::size_t j = 0; j < table.keys.size(); ++j) {
        table.unpack(table.keys[j], w);
        u128 weight = static_cast<u128>(table.counts[i]) * table.counts[j];
        for (std::size_t nu = 0; nu < d && weight != 0; ++nu) {
          i64 diff = v[nu] - w[nu];
          if (diff < 0) diff += ip;
          weight *= mult[nu][static_cast<std::size_t>(diff)];
        }
        total += weight;
      }
    }
  } else {
    // Odometer over residue classes with nonzero multiplicity per axis.
    std::vector<std::vector<std::pair<u64, u64>>> classes(d);
    for (std::size_t i = 0; i < d; ++i)
      for (u64 r = 0; r < ctx.p; ++r)
        if (mult[i][r] != 0) classes[i].emplace_back(r, mult[i][r]);
    std::vector<std::size_t> idx(d, 0);
    std::vector<i64> shift(d);
    while (true) {
      u128 weight = 1;
      for (std::size_t i = 0; i < d; ++i) {
        shift[i] = static_cast<i64>(classes[i][idx[i]].first);
        weight *= classes[i][idx[i]].second;
      }
      total += weight * dist.correlate(dist, shift);
      std::size_t axis = 0;
      while (axis < d && ++idx[axis] == classes[axis].size()) {
        idx[axis] = 0;
        ++axis;
      }
      if (axis == d) break;
    }
  }
  return total;
}

CongruenceDecomposition decompose_mod_count(int s, u64 N, const FieldContext& ctx,
                                            const Budget& budget) {
  CongruenceDecomposition out;
  auto k = determine_k(s, N, ctx.p);
  out.threshold_k = k ? std::min(*k, ctx.d) : 0;

  PowerSumDistribution dist = build_folds(s, N, ctx.d, ctx.p, Domain::integer, budget);
  const auto& table = dist.table();
  u128 pair_cost = static_cast<u128>(table.keys.size()) * table.keys.size();
  if (pair_cost > budget.max_naive_ops)
    raise(errc::work_budget_exceeded, "decomposition needs " + u128_to_string(pair_cost) +
                                          " pair operations, budget " +
                                          std::to_string(budget.max_naive_ops));

  const std::size_t d = table.lo.size();
  const i64 ip = static_cast<i64>(ctx.p);
  std::vector<i64> v(d), w(d), m(d);
  std::map<std::vector<i64>, u128> terms;
  for (std::size_t i = 0; i < table.keys.size(); ++i) {
    table.unpack(table.keys[i], v);
    for (std::size_t j = 0; j < table.keys.size(); ++j) {
      table.unpack(table.keys[j], w);
      bool divisible = true;
      for (std::size_t nu = 0; nu < d; ++nu) {
        i64 diff = v[nu] - w[nu];
        if (diff % ip != 0) {
          divisible = false;
          break;
        }
        m[nu] = diff / ip;
      }
      if (!divisible) continue;
      terms[m] += static_cast<u128>(table.counts[i]) * table.counts[j];
    }
  }
  out.terms.assign(terms.begin(), terms.end());
  for (const auto& [mv, count] : out.terms) out.reconstructed += count;
  return out;
}

}  // namespace ratsum
