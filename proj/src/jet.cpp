#include "specgeo/jet.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace specgeo {

namespace {

// Enumerates multi-indices of n variables with total degree d, lexicographic
// within the degree block.
void enumerate_degree(int n, int d, std::vector<int>& current, int pos, int left,
                      std::vector<int>& out) {
  if (pos == n - 1) {
    current[pos] = left;
    out.insert(out.end(), current.begin(), current.end());
    return;
  }
  for (int e = left; e >= 0; --e) {
    current[pos] = e;
    enumerate_degree(n, d, current, pos + 1, left - e, out);
  }
}

uint64_t pack_exponents(std::span<const int> alpha) {
  uint64_t key = 0;
  for (int a : alpha) key = key * 16 + static_cast<uint64_t>(a + 1);
  return key;
}

}  // namespace

JetSpace::JetSpace(int nvars) : nvars_(nvars) {
  if (nvars < 1 || nvars > 16) throw OrderError("jet dimension must be in 1..16");

  std::vector<int> current(nvars);
  for (int d = 0; d <= kMaxJetOrder; ++d) {
    enumerate_degree(nvars, d, current, 0, d, exps_);
    size_[d] = static_cast<int>(exps_.size()) / nvars;
  }
  const int total = size_[kMaxJetOrder];

  degree_.resize(total);
  alpha_factorial_.resize(total);
  lookup_.reserve(total);
  for (int i = 0; i < total; ++i) {
    auto a = exponents(i);
    int deg = 0;
    double fact = 1.0;
    for (int v = 0; v < nvars_; ++v) {
      deg += a[v];
      for (int e = 2; e <= a[v]; ++e) fact *= e;
    }
    degree_[i] = deg;
    alpha_factorial_[i] = fact;
    lookup_.emplace_back(pack_exponents(a), i);
  }
  std::sort(lookup_.begin(), lookup_.end());

  up_.assign(static_cast<size_t>(total) * nvars_, -1);
  down_.assign(static_cast<size_t>(total) * nvars_, -1);
  std::vector<int> tmp(nvars_);
  for (int i = 0; i < total; ++i) {
    auto a = exponents(i);
    for (int v = 0; v < nvars_; ++v) {
      std::copy(a.begin(), a.end(), tmp.begin());
      tmp[v] += 1;
      up_[static_cast<size_t>(i) * nvars_ + v] = index_of(tmp);
      if (a[v] > 0) {
        tmp[v] -= 2;
        down_[static_cast<size_t>(i) * nvars_ + v] = index_of(tmp);
      }
    }
  }

  // Convolution table grouped by deg(a)+deg(b) so an order-m product uses a
  // prefix of the list.
  for (int d = 0; d <= kMaxJetOrder; ++d) {
    for (int i = 0; i < total && degree_[i] <= d; ++i) {
      for (int j = 0; j < total; ++j) {
        if (degree_[i] + degree_[j] != d) continue;
        std::vector<int> sum(nvars_);
        auto ai = exponents(i);
        auto aj = exponents(j);
        for (int v = 0; v < nvars_; ++v) sum[v] = ai[v] + aj[v];
        prod_.push_back({i, j, index_of(sum)});
      }
    }
    prod_offset_[d] = prod_.size();
  }
}

int JetSpace::index_of(std::span<const int> alpha) const {
  int total = 0;
  for (int a : alpha) {
    if (a < 0) return -1;
    total += a;
  }
  if (total > kMaxJetOrder) return -1;
  const uint64_t key = pack_exponents(alpha);
  auto it = std::lower_bound(lookup_.begin(), lookup_.end(), std::make_pair(key, 0));
  if (it == lookup_.end() || it->first != key) return -1;
  return it->second;
}

std::shared_ptr<const JetSpace> JetSpace::of(int nvars) {
  static std::mutex mutex;
  static std::map<int, std::shared_ptr<const JetSpace>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& entry = cache[nvars];
  if (!entry) entry = std::shared_ptr<const JetSpace>(new JetSpace(nvars));
  return entry;
}

}  // namespace specgeo
