#include "topotype/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>

#include "topotype/errors.hpp"

namespace topotype {

namespace {

using Index = ColumnSpace::Index;

constexpr int kMaxColumns = 64;
constexpr long kMaxActionEntries = 50'000'000;

long pow_long(long base, int exp) {
  long r = 1;
  while (exp-- > 0) r *= base;
  return r;
}

long inverse_mod(long a, long p) {
  long result = 1, base = ((a % p) + p) % p;
  for (long e = p - 2; e > 0; e >>= 1) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
  }
  return result;
}

// Rank over F_p of the given vectors (each of length k).
int rank_mod_p(std::vector<std::vector<long>> rows, long p) {
  if (rows.empty()) return 0;
  const std::size_t width = rows.front().size();
  int rank = 0;
  for (std::size_t col = 0; col < width && rank < static_cast<int>(rows.size()); ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][col] % p == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    const long inv = inverse_mod(rows[rank][col], p);
    for (auto& x : rows[rank]) x = x * inv % p;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == static_cast<std::size_t>(rank) || rows[r][col] % p == 0) continue;
      const long f = rows[r][col];
      for (std::size_t c = 0; c < width; ++c) rows[r][c] = ((rows[r][c] - f * rows[rank][c]) % p + p) % p;
    }
    ++rank;
  }
  return rank;
}

bool full_rank(const ColumnSpace& space, std::span<const Index> columns) {
  if (space.k() == 1) return true;
  std::vector<std::vector<long>> rows;
  Index previous = 0;
  for (Index c : columns) {
    if (c == previous) continue;
    previous = c;
    auto v = space.decode(c);
    rows.emplace_back(v.coords.begin(), v.coords.end());
  }
  return rank_mod_p(std::move(rows), space.p()) == space.k();
}

// Insertion sort of a short buffer.
void sort_small(Index* first, std::size_t count) {
  for (std::size_t i = 1; i < count; ++i) {
    Index x = first[i];
    std::size_t j = i;
    while (j > 0 && first[j - 1] > x) {
      first[j] = first[j - 1];
      --j;
    }
    first[j] = x;
  }
}

GeneratingColumnSet to_columns(const ColumnSpace& space, std::span<const Index> multiset) {
  GeneratingColumnSet out;
  out.columns.reserve(multiset.size());
  for (Index i : multiset) out.columns.push_back(space.decode(i));
  return out;
}

// Depth-first enumeration of nondecreasing index sequences. The last column
// is forced by the zero row-sum condition.
class Enumerator {
 public:
  Enumerator(const ColumnSpace& space, int R) : space_(space), R_(R), buffer_(R) {}

  template <typename Visit>
  void run_from(Index first, Visit&& visit) {
    buffer_[0] = first;
    descend(1, first, first, visit);
  }

 private:
  template <typename Visit>
  void descend(int depth, Index minimum, Index sum, Visit& visit) {
    if (depth == R_ - 1) {
      const Index last = space_.negate(sum);
      if (last == 0 || last < minimum) return;
      buffer_[depth] = last;
      if (full_rank(space_, buffer_)) visit(std::span<const Index>(buffer_));
      return;
    }
    for (int c = minimum; c < space_.size(); ++c) {
      buffer_[depth] = static_cast<Index>(c);
      descend(depth + 1, static_cast<Index>(c), space_.add(sum, static_cast<Index>(c)), visit);
    }
  }

  const ColumnSpace& space_;
  int R_;
  std::vector<Index> buffer_;
};

}  // namespace

FeasibilityGuard FeasibilityGuard::from_env() {
  FeasibilityGuard guard;
  if (const char* steps = std::getenv("TOPOTYPE_GUARD_STEPS"); steps && *steps) {
    BigInt value;
    if (value.set_str(steps, 10) != 0 || value <= 0)
      throw std::invalid_argument(std::string("TOPOTYPE_GUARD_STEPS is not a positive integer: ") + steps);
    guard.max_steps = value;
  }
  return guard;
}

// ---------------------------------------------------------------------------
// ColumnSpace

ColumnSpace::ColumnSpace(long p, int k) : p_(p), k_(k) {
  if (!is_prime(p)) throw std::invalid_argument("ColumnSpace: p must be prime");
  if (k < 1) throw std::invalid_argument("ColumnSpace: k must be positive");
  BigInt q;
  mpz_ui_pow_ui(q.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(k));
  if (q > 65536) throw std::invalid_argument("ColumnSpace: p^k exceeds 65536");
  size_ = static_cast<int>(q.get_si());
}

Index ColumnSpace::encode(const FpVector& v) const {
  if (static_cast<int>(v.coords.size()) != k_) throw std::invalid_argument("ColumnSpace: wrong vector length");
  long index = 0;
  for (int c : v.coords) index = index * p_ + ((c % p_) + p_) % p_;
  return static_cast<Index>(index);
}

FpVector ColumnSpace::decode(Index index) const {
  FpVector v;
  v.coords.assign(k_, 0);
  long rest = index;
  for (int i = k_ - 1; i >= 0; --i) {
    v.coords[i] = static_cast<int>(rest % p_);
    rest /= p_;
  }
  return v;
}

Index ColumnSpace::add(Index a, Index b) const {
  long result = 0, scale = 1;
  long x = a, y = b;
  for (int i = 0; i < k_; ++i) {
    result += ((x % p_ + y % p_) % p_) * scale;
    x /= p_;
    y /= p_;
    scale *= p_;
  }
  return static_cast<Index>(result);
}

Index ColumnSpace::negate(Index a) const {
  long result = 0, scale = 1;
  long x = a;
  for (int i = 0; i < k_; ++i) {
    result += ((p_ - x % p_) % p_) * scale;
    x /= p_;
    scale *= p_;
  }
  return static_cast<Index>(result);
}

Index ColumnSpace::scale(Index a, long c) const {
  long result = 0, s = 1;
  long x = a;
  c = ((c % p_) + p_) % p_;
  for (int i = 0; i < k_; ++i) {
    result += ((x % p_) * c % p_) * s;
    x /= p_;
    s *= p_;
  }
  return static_cast<Index>(result);
}

// ---------------------------------------------------------------------------
// LinearGroup

LinearGroup::LinearGroup(const ColumnSpace& space) : stride_(space.size()) {
  const long p = space.p();
  const int k = space.k();
  if (group_order(p, k) * space.size() > kMaxActionEntries)
    throw GuardExceeded("LinearGroup: action table too large", BigInt(group_order(p, k) * space.size()).get_str());
  const long matrices = pow_long(p, k * k);

  auto apply = [&](const std::vector<long>& m, Index v) {
    auto x = space.decode(v);
    FpVector y;
    y.coords.assign(k, 0);
    for (int r = 0; r < k; ++r) {
      long acc = 0;
      for (int c = 0; c < k; ++c) acc += m[r * k + c] * x.coords[c];
      y.coords[r] = static_cast<int>(acc % p);
    }
    return space.encode(y);
  };
  auto append = [&](const std::vector<long>& m) {
    for (int v = 0; v < space.size(); ++v) images_.push_back(apply(m, static_cast<Index>(v)));
  };

  std::vector<long> identity(k * k, 0);
  for (int i = 0; i < k; ++i) identity[i * k + i] = 1;
  append(identity);

  std::vector<long> m(k * k);
  for (long code = 0; code < matrices; ++code) {
    long rest = code;
    for (int i = k * k - 1; i >= 0; --i) {
      m[i] = rest % p;
      rest /= p;
    }
    if (m == identity) continue;
    std::vector<std::vector<long>> rows(k);
    for (int r = 0; r < k; ++r) rows[r].assign(m.begin() + r * k, m.begin() + (r + 1) * k);
    if (rank_mod_p(rows, p) == k) append(m);
  }
}

std::vector<Index> LinearGroup::image(std::size_t g, std::span<const Index> multiset) const {
  const auto map = action(g);
  std::vector<Index> out;
  out.reserve(multiset.size());
  for (Index v : multiset) out.push_back(map[v]);
  std::sort(out.begin(), out.end());
  return out;
}

LinearGroup::Canonical LinearGroup::canonical(std::span<const Index> multiset) const {
  Canonical best{std::vector<Index>(multiset.begin(), multiset.end()), 0};
  for (std::size_t g = 1; g < order(); ++g) {
    auto candidate = image(g, multiset);
    if (candidate < best.form) best = {std::move(candidate), g};
  }
  return best;
}

bool LinearGroup::is_canonical(std::span<const Index> multiset) const {
  const std::size_t n = multiset.size();
  if (n > kMaxColumns) throw std::invalid_argument("is_canonical: too many columns");
  Index buffer[kMaxColumns];
  for (std::size_t g = 1; g < order(); ++g) {
    const Index* map = images_.data() + g * stride_;
    for (std::size_t i = 0; i < n; ++i) buffer[i] = map[multiset[i]];
    sort_small(buffer, n);
    if (std::lexicographical_compare(buffer, buffer + n, multiset.begin(), multiset.end())) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Enumeration and orbit counting

BigInt group_order(long p, int k) {
  BigInt pk, order = 1, pi = 1;
  mpz_ui_pow_ui(pk.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(k));
  for (int i = 0; i < k; ++i) {
    order *= pk - pi;
    pi *= p;
  }
  return order;
}

BigInt candidate_multisets(long p, int k, int R) {
  BigInt pk;
  mpz_ui_pow_ui(pk.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(k));
  return multichoose(R, BigInt(pk - 1).get_si());
}

void require_feasible(long p, int k, int R, const FeasibilityGuard& guard) {
  ActionParams{p, k, R}.validate();
  if (R > kMaxColumns) throw GuardExceeded("R exceeds the oracle column limit", std::to_string(R));
  BigInt pk;
  mpz_ui_pow_ui(pk.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(k));
  if (pk > 65536) throw GuardExceeded("p^k exceeds 65536", pk.get_str());
  const BigInt multisets = candidate_multisets(p, k, R);
  if (multisets > guard.max_multisets)
    throw GuardExceeded("multichoose(R, p^k-1) = " + multisets.get_str() + " exceeds the multiset guard " +
                            guard.max_multisets.get_str(),
                        multisets.get_str());
  const BigInt steps = group_order(p, k) * multisets / pk;
  if (steps > guard.max_steps)
    throw GuardExceeded("estimated " + steps.get_str() + " canonicalization steps exceed the step guard " +
                            guard.max_steps.get_str(),
                        steps.get_str());
}

void for_each_generating_set(const ColumnSpace& space, int R, const FeasibilityGuard& guard,
                             const std::function<void(std::span<const Index>)>& visit) {
  require_feasible(space.p(), space.k(), R, guard);
  Enumerator enumerator(space, R);
  for (int first = 1; first < space.size(); ++first) enumerator.run_from(static_cast<Index>(first), visit);
}

std::vector<GeneratingColumnSet> enumerate_generating_sets(long p, int k, int R, const FeasibilityGuard& guard) {
  ColumnSpace space(p, k);
  std::vector<GeneratingColumnSet> out;
  for_each_generating_set(space, R, guard,
                          [&](std::span<const Index> multiset) { out.push_back(to_columns(space, multiset)); });
  return out;
}

PartitionType classify_partition(const GeneratingColumnSet& columns, long p) {
  std::map<FpVector, int> groups;
  for (const auto& column : columns.columns) {
    FpVector normalized = column;
    auto lead = std::find_if(normalized.coords.begin(), normalized.coords.end(),
                             [p](int c) { return c % p != 0; });
    if (lead == normalized.coords.end()) throw std::invalid_argument("classify_partition: zero column");
    const long inv = inverse_mod(*lead, p);
    for (auto& c : normalized.coords) c = static_cast<int>((((c % p) + p) % p) * inv % p);
    ++groups[normalized];
  }
  std::vector<int> sizes;
  for (const auto& [point, count] : groups) sizes.push_back(count);
  return PartitionType(std::move(sizes));
}

OrbitTable count_orbits(long p, int k, int R, const OrbitOptions& options) {
  require_feasible(p, k, R, options.guard);
  const ColumnSpace space(p, k);
  const LinearGroup group(space);

  struct Slice {
    std::map<PartitionType, long> by_partition;
    long orbits = 0;
    long generating_sets = 0;
    std::vector<std::vector<Index>> representatives;
  };
  std::vector<Slice> slices(space.size());
  std::atomic<int> next{1};

  auto work = [&] {
    Enumerator enumerator(space, R);
    for (int first = next++; first < space.size(); first = next++) {
      Slice& slice = slices[first];
      enumerator.run_from(static_cast<Index>(first), [&](std::span<const Index> multiset) {
        ++slice.generating_sets;
        if (!group.is_canonical(multiset)) return;
        ++slice.orbits;
        ++slice.by_partition[classify_partition(to_columns(space, multiset), p)];
        if (options.keep_representatives) slice.representatives.emplace_back(multiset.begin(), multiset.end());
      });
    }
  };

  unsigned workers = options.workers ? options.workers : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, space.size());
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  // Slices are merged in first-column order, so the result does not depend
  // on the worker count.
  OrbitTable table;
  for (const auto& slice : slices) {
    table.total += slice.orbits;
    table.generating_sets += slice.generating_sets;
    for (const auto& [partition, count] : slice.by_partition) table.by_partition[partition] += count;
    for (const auto& rep : slice.representatives) table.representatives.push_back(to_columns(space, rep));
  }
  return table;
}

BigInt rank1_orbit_count(long p, int R, const FeasibilityGuard& guard) {
  OrbitOptions options;
  options.guard = guard;
  options.workers = 1;
  return count_orbits(p, 1, R, options).total;
}

// ---------------------------------------------------------------------------
// Matrix enumeration

Distribution distribution_bruteforce(std::span<const int> parts, std::span<const long> weights, long p,
                                     ColumnRange range, const FeasibilityGuard& guard) {
  if (p < 3 || !is_prime(p)) throw std::invalid_argument("distribution_bruteforce: p must be an odd prime");
  if (weights.size() != parts.size()) throw std::invalid_argument("distribution_bruteforce: one weight per part");
  const long first_column = range == ColumnRange::kFull ? 0 : 1;

  BigInt matrices = 1;
  for (int part : parts) matrices *= multichoose(part, p - first_column);
  if (matrices > guard.max_matrices)
    throw GuardExceeded("distribution_bruteforce: " + matrices.get_str() + " matrices exceed the guard",
                        matrices.get_str());

  // Every row (a_first..a_{p-1}) with the required sum, as its value sum_j j*a_j.
  std::vector<std::vector<long>> row_values(parts.size());
  for (std::size_t i = 0; i < parts.size(); ++i) {
    std::vector<long> entries(p, 0);
    std::function<void(long, int)> fill = [&](long column, int remaining) {
      if (column == p - 1) {
        entries[column] = remaining;
        long value = 0;
        for (long j = first_column; j < p; ++j) value += j * entries[j];
        row_values[i].push_back(value);
        return;
      }
      for (int a = 0; a <= remaining; ++a) {
        entries[column] = a;
        fill(column + 1, remaining - a);
      }
    };
    fill(first_column, parts[i]);
  }

  std::vector<long> counts(p, 0);
  std::function<void(std::size_t, long)> product = [&](std::size_t row, long weighted) {
    if (row == parts.size()) {
      ++counts[weighted % p];
      return;
    }
    for (long value : row_values[row]) product(row + 1, weighted + weights[row] * value);
  };
  product(0, 0);

  Distribution out;
  for (long c : counts) out.counts.emplace_back(c);
  return out;
}

void write_representatives(std::ostream& out, const OrbitTable& table) {
  for (const auto& rep : table.representatives) {
    for (std::size_t i = 0; i < rep.columns.size(); ++i) {
      if (i) out << ' ';
      out << '(';
      for (std::size_t c = 0; c < rep.columns[i].coords.size(); ++c) {
        if (c) out << ',';
        out << rep.columns[i].coords[c];
      }
      out << ')';
    }
    out << '\n';
  }
}

}  // namespace topotype
