// Copyright 2026 The zsexplore Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <atomic>
#include <cassert>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "kernels_impl.hpp"
#include "zsx/kernels.hpp"

namespace zsx::kernels {
namespace {

constexpr KernelTable kScalarTable{&scalar::dot, &scalar::combine_rows,
                                   &scalar::mat_vec};
#if ZSX_KERNELS_X86
constexpr KernelTable kAvx2Table{&avx2::dot, &avx2::combine_rows,
                                 &avx2::mat_vec};
#endif
#if ZSX_KERNELS_NEON
constexpr KernelTable kNeonTable{&neon::dot, &neon::combine_rows,
                                 &neon::mat_vec};
#endif

Backend best_supported() {
  if (backend_supported(Backend::kAvx2)) return Backend::kAvx2;
  if (backend_supported(Backend::kNeon)) return Backend::kNeon;
  return Backend::kScalar;
}

Backend initial_backend() {
  if (const char* env = std::getenv("ZSX_KERNELS")) {
    const std::string name(env);
    for (Backend b : {Backend::kScalar, Backend::kAvx2, Backend::kNeon}) {
      if (name == backend_name(b) && backend_supported(b)) return b;
    }
  }
  return best_supported();
}

std::atomic<const KernelTable*>& current() {
  static std::atomic<const KernelTable*> ptr{&table(initial_backend())};
  return ptr;
}

}  // namespace

std::string_view backend_name(Backend backend) {
  switch (backend) {
    case Backend::kScalar:
      return "scalar";
    case Backend::kAvx2:
      return "avx2";
    case Backend::kNeon:
      return "neon";
  }
  return "unknown";
}

bool backend_supported(Backend backend) {
  switch (backend) {
    case Backend::kScalar:
      return true;
    case Backend::kAvx2:
#if ZSX_KERNELS_X86 && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Backend::kNeon:
      return ZSX_KERNELS_NEON != 0;
  }
  return false;
}

const KernelTable& table(Backend backend) {
  if (!backend_supported(backend)) {
    throw std::invalid_argument("kernel backend not supported: " +
                                std::string(backend_name(backend)));
  }
  switch (backend) {
#if ZSX_KERNELS_X86
    case Backend::kAvx2:
      return kAvx2Table;
#endif
#if ZSX_KERNELS_NEON
    case Backend::kNeon:
      return kNeonTable;
#endif
    default:
      return kScalarTable;
  }
}

Backend active_backend() {
  const KernelTable* t = current().load(std::memory_order_relaxed);
#if ZSX_KERNELS_X86
  if (t == &kAvx2Table) return Backend::kAvx2;
#endif
#if ZSX_KERNELS_NEON
  if (t == &kNeonTable) return Backend::kNeon;
#endif
  return Backend::kScalar;
}

void set_backend(Backend backend) {
  current().store(&table(backend), std::memory_order_relaxed);
}

double dot(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  return current().load(std::memory_order_relaxed)->dot(a.data(), b.data(),
                                                        a.size());
}

void combine_rows(std::span<const double> w, std::span<const double> m,
                  std::size_t cols, std::span<double> out) {
  assert(m.size() == w.size() * cols);
  assert(out.size() == cols);
  current().load(std::memory_order_relaxed)
      ->combine_rows(w.data(), m.data(), w.size(), cols, out.data());
}

void mat_vec(std::span<const double> m, std::span<const double> x,
             std::span<double> out) {
  assert(m.size() == out.size() * x.size());
  current().load(std::memory_order_relaxed)
      ->mat_vec(m.data(), x.data(), out.size(), x.size(), out.data());
}

}  // namespace zsx::kernels
