#include "ratsum/moments.hpp"

#include <algorithm>
#include <cmath>

namespace ratsum {

namespace {

double pow_int(double base, int exponent) {
  double acc = 1.0;
  for (int i = 0; i < exponent; ++i) acc *= base;
  return acc;
}

// |z|^rho from |z|^2, exact multiplications for the even part.
double abs_power(const Complex& z, int rho) {
  double norm = z.real() * z.real() + z.imag() * z.imag();
  double even = pow_int(norm, rho / 2);
  return (rho & 1) ? even * std::sqrt(norm) : even;
}

void check_exponent(int rho) {
  if (rho < 1) raise(errc::range_error, "moment exponent must be >= 1");
}

u128 u128_pow_checked(u64 base, int exp, const char* what) {
  u128 acc = 1;
  for (int i = 0; i < exp; ++i) {
    if (acc > (~static_cast<u128>(0)) / base)
      raise(errc::capacity_exceeded, std::string(what) + " overflows 128 bits");
    acc *= base;
  }
  return acc;
}

// Decode index -> coefficient vector, axis 0 least significant.
void decode_coeffs(u64 index, u64 p, std::vector<u64>& out) {
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = index % p;
    index /= p;
  }
}

struct MeanAccumulator {
  KahanSum sum;
  KahanSum sumsq;
  u64 n = 0;

  void add(double x) {
    sum.add(x);
    sumsq.add(x * x);
    ++n;
  }
  double mean() const { return n == 0 ? 0.0 : sum.value() / static_cast<double>(n); }
  double standard_error() const {
    if (n < 2) return 0.0;
    double m = mean();
    double var = (sumsq.value() - static_cast<double>(n) * m * m) / static_cast<double>(n - 1);
    return var <= 0.0 ? 0.0 : std::sqrt(var / static_cast<double>(n));
  }
};

void require_samples(const SampleSpec& sample) {
  if (sample.samples == 0)
    raise(errc::range_error, "sampling requires a positive sample count and a seed");
}

}  // namespace

MomentRecord moment_full_exponent(int rho, u64 N, const FieldContext& ctx, MomentMethod method,
                                  const SampleSpec& sample, const Budget& budget) {
  check_exponent(rho);
  if (N < 1 || N > ctx.p) raise(errc::range_error, "requires 1 <= N <= p");

  MomentRecord rec;
  rec.p = ctx.p;
  rec.d = ctx.d;
  rec.s_or_k = rho;
  rec.N = N;
  rec.set_kind = "full";

  switch (method) {
    case MomentMethod::count: {
      if (rho % 2 != 0)
        raise(errc::odd_exponent_with_count_method,
              "exponent " + std::to_string(rho) + " is odd; use dft or sample");
      rec.method = "count";
      ShiftVector zero;
      zero.h.assign(static_cast<std::size_t>(ctx.d), 0);
      zero.flavor = Domain::residue;
      u128 count = count_mod_solutions(rho / 2, N, zero, ctx, budget);
      rec.exact = count;
      rec.value = static_cast<double>(count);
      return rec;
    }
    case MomentMethod::dft: {
      u128 space = u128_pow_checked(ctx.p, ctx.d, "coefficient space");
      if (space > budget.max_sum_evals)
        raise(errc::work_budget_exceeded,
              "dft needs " + u128_to_string(space) + " sum evaluations, budget " +
                  std::to_string(budget.max_sum_evals));
      rec.method = "dft";
      CharacterTable table(ctx.p);
      std::vector<u64> a(static_cast<std::size_t>(ctx.d));
      KahanSum acc;
      u64 total = static_cast<u64>(space);
      for (u64 index = 0; index < total; ++index) {
        decode_coeffs(index, ctx.p, a);
        CoefficientVector coeffs{a};
        KahanComplex sum;
        for (u64 n = 1; n <= N; ++n) sum.add(table(phase_at(coeffs, n, ctx)));
        acc.add(abs_power(sum.value(), rho));
      }
      rec.value = acc.value() / static_cast<double>(total);
      return rec;
    }
    case MomentMethod::sample: {
      require_samples(sample);
      rec.method = "sample";
      rec.seed = sample.seed;
      CounterRng rng(sample.seed);
      CharacterTable table(ctx.p);
      std::vector<u64> a(static_cast<std::size_t>(ctx.d));
      MeanAccumulator acc;
      for (u64 i = 0; i < sample.samples; ++i) {
        for (auto& coord : a) coord = rng.next_below(ctx.p);
        CoefficientVector coeffs{a};
        KahanComplex sum;
        for (u64 n = 1; n <= N; ++n) sum.add(table(phase_at(coeffs, n, ctx)));
        acc.add(abs_power(sum.value(), rho));
      }
      rec.value = acc.mean();
      rec.stderr_value = acc.standard_error();
      return rec;
    }
  }
  raise(errc::range_error, "unknown moment method");
}

MomentRecord moment_full(int s, u64 N, const FieldContext& ctx, MomentMethod method,
                         const SampleSpec& sample, const Budget& budget) {
  if (s < 1) raise(errc::range_error, "s must be >= 1");
  MomentRecord rec = moment_full_exponent(2 * s, N, ctx, method, sample, budget);
  rec.s_or_k = s;
  return rec;
}

namespace {

struct PointSet {
  std::string kind;
  u64 size = 0;
  bool wrapped = false;
  // Explicitly materialized points, or empty when point_at decodes lazily.
  std::vector<std::vector<u64>> points;
  std::vector<u64> box_offsets;
  u64 box_side = 0;
  u64 p = 0;
  int d = 0;

  void point_at(u64 index, std::vector<u64>& out) const {
    if (!points.empty()) {
      out = points[static_cast<std::size_t>(index)];
      return;
    }
    if (kind == "box") {
      for (int i = 0; i < d; ++i) {
        u64 j = index % box_side;
        index /= box_side;
        out[static_cast<std::size_t>(i)] = (box_offsets[static_cast<std::size_t>(i)] + 1 + j) % p;
      }
      return;
    }
    // moment curve: index is the parameter t
    u64 t = index;
    u64 acc = 1;
    for (int i = 0; i < d; ++i) {
      acc = mul_mod(acc, t, p);
      out[static_cast<std::size_t>(i)] = acc;
    }
  }
};

u64 eval_poly_coeffs(std::span<const i64> coeffs, u64 t, u64 p) {
  u64 acc = 0;
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    acc = mul_mod(acc, t, p);
    acc += reduce_mod(coeffs[i], p);
    if (acc >= p) acc -= p;
  }
  return acc;
}

PointSet expand_set(const SetGenerator& gen, const FieldContext& ctx) {
  PointSet set;
  set.p = ctx.p;
  set.d = ctx.d;
  if (const auto* box = std::get_if<BoxSet>(&gen)) {
    if (box->side < 1) raise(errc::empty_set, "box side must be >= 1");
    if (box->side > ctx.p) raise(errc::range_error, "box side exceeds p");
    if (box->offsets.size() != static_cast<std::size_t>(ctx.d))
      raise(errc::range_error, "box needs exactly d offsets");
    set.kind = "box";
    set.box_side = box->side;
    set.box_offsets.reserve(box->offsets.size());
    for (i64 a : box->offsets) {
      u64 r = reduce_mod(a, ctx.p);
      set.box_offsets.push_back(r);
      if (r + box->side > ctx.p) set.wrapped = true;
    }
    u128 size = u128_pow_checked(box->side, ctx.d, "box size");
    if (size > UINT64_MAX) raise(errc::capacity_exceeded, "box size exceeds 64 bits");
    set.size = static_cast<u64>(size);
    return set;
  }
  if (std::holds_alternative<MomentCurve>(gen)) {
    set.kind = "moment_curve";
    set.size = ctx.p;
    return set;
  }
  if (const auto* curve = std::get_if<PolyCurve>(&gen)) {
    if (curve->coeffs.size() != static_cast<std::size_t>(ctx.d))
      raise(errc::range_error, "parametric curve needs exactly d polynomials");
    for (const auto& f : curve->coeffs)
      if (f.size() > ctx.p)
        raise(errc::range_error, "curve polynomial degree must be < p");
    set.kind = "poly_curve";
    // Set semantics: parameter values hitting the same point collapse.
    set.points.reserve(ctx.p);
    std::vector<u64> point(static_cast<std::size_t>(ctx.d));
    for (u64 t = 0; t < ctx.p; ++t) {
      for (int i = 0; i < ctx.d; ++i)
        point[static_cast<std::size_t>(i)] =
            eval_poly_coeffs(curve->coeffs[static_cast<std::size_t>(i)], t, ctx.p);
      set.points.push_back(point);
    }
    std::sort(set.points.begin(), set.points.end());
    set.points.erase(std::unique(set.points.begin(), set.points.end()), set.points.end());
    set.size = set.points.size();
    return set;
  }
  const auto& expl = std::get<ExplicitSet>(gen);
  if (expl.points.empty()) raise(errc::empty_set, "explicit set is empty");
  set.kind = "explicit";
  set.points.reserve(expl.points.size());
  std::vector<u64> point(static_cast<std::size_t>(ctx.d));
  for (const auto& raw : expl.points) {
    if (raw.size() != static_cast<std::size_t>(ctx.d))
      raise(errc::range_error, "explicit point needs exactly d coordinates");
    for (int i = 0; i < ctx.d; ++i)
      point[static_cast<std::size_t>(i)] = reduce_mod(raw[static_cast<std::size_t>(i)], ctx.p);
    set.points.push_back(point);
  }
  auto sorted = set.points;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    raise(errc::parameter_domain, "explicit set contains duplicate points");
  set.size = set.points.size();
  return set;
}

}  // namespace

u64 set_cardinality(const SetGenerator& gen, const FieldContext& ctx) {
  return expand_set(gen, ctx).size;
}

MomentRecord moment_restricted(const SetGenerator& gen, int exponent, u64 N,
                               const FieldContext& ctx, RestrictedMethod method,
                               const SampleSpec& sample, const Budget& budget) {
  check_exponent(exponent);
  if (N < 1 || N > ctx.p) raise(errc::range_error, "requires 1 <= N <= p");
  PointSet set = expand_set(gen, ctx);

  bool enumerate = true;
  if (set.size > budget.max_sum_evals) {
    if (method == RestrictedMethod::enumerate)
      raise(errc::work_budget_exceeded,
            "set of size " + std::to_string(set.size) + " exceeds evaluation budget " +
                std::to_string(budget.max_sum_evals));
    enumerate = false;
  }
  if (method == RestrictedMethod::sample) enumerate = false;

  MomentRecord rec;
  rec.p = ctx.p;
  rec.d = ctx.d;
  rec.s_or_k = exponent;
  rec.N = N;
  rec.set_kind = set.kind;
  if (set.wrapped) rec.flags.push_back("wrapped");

  CharacterTable table(ctx.p);
  std::vector<u64> point(static_cast<std::size_t>(ctx.d));
  auto eval_point = [&]() {
    CoefficientVector coeffs{point};
    KahanComplex sum;
    for (u64 n = 1; n <= N; ++n) sum.add(table(phase_at(coeffs, n, ctx)));
    return abs_power(sum.value(), exponent);
  };

  if (enumerate) {
    rec.method = "enumerate";
    KahanSum acc;
    for (u64 index = 0; index < set.size; ++index) {
      set.point_at(index, point);
      acc.add(eval_point());
    }
    rec.value = acc.value() / static_cast<double>(set.size);
    return rec;
  }

  require_samples(sample);
  rec.method = "sample";
  rec.seed = sample.seed;
  CounterRng rng(sample.seed);
  MeanAccumulator acc;
  for (u64 i = 0; i < sample.samples; ++i) {
    set.point_at(rng.next_below(set.size), point);
    acc.add(eval_point());
  }
  rec.value = acc.mean();
  rec.stderr_value = acc.standard_error();
  return rec;
}

MomentRecord moment_weighted_box(const BoxSet& box, const WeightSequence& weights, int s, u64 N,
                                 const FieldContext& ctx, const Budget& budget) {
  if (s < 1) raise(errc::range_error, "s must be >= 1");
  if (N < 1 || N > ctx.p) raise(errc::range_error, "requires 1 <= N <= p");
  if (weights.gamma.size() < N)
    raise(errc::range_error, "weight sequence shorter than N = " + std::to_string(N));
  check_weights(weights);

  PointSet set = expand_set(SetGenerator{box}, ctx);
  if (set.size > budget.max_sum_evals)
    raise(errc::work_budget_exceeded,
          "box of size " + std::to_string(set.size) + " exceeds evaluation budget " +
              std::to_string(budget.max_sum_evals));

  MomentRecord rec;
  rec.p = ctx.p;
  rec.d = ctx.d;
  rec.s_or_k = s;
  rec.N = N;
  rec.set_kind = "box";
  rec.method = "enumerate";
  if (set.wrapped) rec.flags.push_back("wrapped");

  CharacterTable table(ctx.p);
  std::vector<u64> point(static_cast<std::size_t>(ctx.d));
  KahanSum acc;
  for (u64 index = 0; index < set.size; ++index) {
    set.point_at(index, point);
    CoefficientVector coeffs{point};
    KahanComplex sum;
    for (u64 n = 1; n <= N; ++n) sum.add(weights.gamma[n - 1] * table(phase_at(coeffs, n, ctx)));
    acc.add(abs_power(sum.value(), 2 * s));
  }
  rec.value = acc.value() / static_cast<double>(set.size);
  return rec;
}

MaximalResult maximal_operator(const PermutedSplit& split, u64 N, const FieldContext& ctx,
                               const Budget& budget, const SampleSpec* sample) {
  if (N < 1 || N > ctx.p) raise(errc::range_error, "requires 1 <= N <= p");
  if (split.perm.size() != static_cast<std::size_t>(ctx.d))
    raise(errc::range_error, "permutation must have d entries");
  std::vector<bool> seen(static_cast<std::size_t>(ctx.d), false);
  for (int v : split.perm) {
    if (v < 1 || v > ctx.d || seen[static_cast<std::size_t>(v - 1)])
      raise(errc::range_error, "perm is not a permutation of 1..d");
    seen[static_cast<std::size_t>(v - 1)] = true;
  }
  if (split.k < 0 || split.k > ctx.d) raise(errc::range_error, "requires 0 <= k <= d");
  if (split.fixed.size() != static_cast<std::size_t>(split.k))
    raise(errc::range_error, "fixed block must have k entries");

  const int free_count = ctx.d - split.k;
  std::vector<u64> coeffs(static_cast<std::size_t>(ctx.d), 0);
  for (int i = 0; i < split.k; ++i)
    coeffs[static_cast<std::size_t>(split.perm[static_cast<std::size_t>(i)] - 1)] =
        reduce_mod(split.fixed[static_cast<std::size_t>(i)], ctx.p);

  CharacterTable table(ctx.p);
  auto abs_sum = [&]() {
    CoefficientVector a{coeffs};
    KahanComplex sum;
    for (u64 n = 1; n <= N; ++n) sum.add(table(phase_at(a, n, ctx)));
    return std::abs(sum.value());
  };

  MaximalResult result;
  if (free_count == 0) {
    result.value = abs_sum();
    return result;
  }

  u128 space = u128_pow_checked(ctx.p, free_count, "free coefficient space");
  if (space <= budget.max_sum_evals) {
    std::vector<u64> c(static_cast<std::size_t>(free_count));
    double best = 0.0;
    u64 total = static_cast<u64>(space);
    for (u64 index = 0; index < total; ++index) {
      decode_coeffs(index, ctx.p, c);
      for (int j = 0; j < free_count; ++j)
        coeffs[static_cast<std::size_t>(split.perm[static_cast<std::size_t>(split.k + j)] - 1)] =
            c[static_cast<std::size_t>(j)];
      best = std::max(best, abs_sum());
    }
    result.value = best;
    return result;
  }

  if (sample == nullptr)
    raise(errc::work_budget_exceeded,
          "maximum over " + u128_to_string(space) + " vectors exceeds evaluation budget " +
              std::to_string(budget.max_sum_evals) + " (provide samples for a lower bound)");
  require_samples(*sample);
  CounterRng rng(sample->seed);
  double best = 0.0;
  for (u64 i = 0; i < sample->samples; ++i) {
    for (int j = 0; j < free_count; ++j)
      coeffs[static_cast<std::size_t>(split.perm[static_cast<std::size_t>(split.k + j)] - 1)] =
          rng.next_below(ctx.p);
    best = std::max(best, abs_sum());
  }
  result.value = best;
  result.exhaustive = false;
  result.samples = sample->samples;
  result.seed = sample->seed;
  return result;
}

}  // namespace ratsum
