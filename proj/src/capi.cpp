// Copyright 2026 The conjbar Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "conjbar/conjbar.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "conjbar/barrier.hpp"
#include "conjbar/conjugate.hpp"
#include "conjbar/errors.hpp"
#include "conjbar/experiment.hpp"
#include "conjbar/generic_newton.hpp"

struct conjbar_cone {
  conjbar::ConeDescriptor desc;
};

struct conjbar_experiment {
  std::vector<conjbar::IterationStats> stats;
};

namespace {

using conjbar::ConeDescriptor;
using conjbar::ConePoint;

thread_local std::string g_last_error;

template <typename F>
conjbar_status guarded(F&& body) {
  g_last_error.clear();
  try {
    return body();
  } catch (const conjbar::InvalidArgument& e) {
    g_last_error = e.what();
    return CONJBAR_INVALID_ARGUMENT;
  } catch (const conjbar::ShapeError& e) {
    g_last_error = e.what();
    return CONJBAR_SHAPE;
  } catch (const conjbar::NotInteriorError& e) {
    g_last_error = e.what();
    return CONJBAR_NOT_INTERIOR;
  } catch (const conjbar::NotPositiveDefinite& e) {
    g_last_error = e.what();
    return CONJBAR_NOT_POSITIVE_DEFINITE;
  } catch (const conjbar::DomainError& e) {
    g_last_error = e.what();
    return CONJBAR_DOMAIN;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return CONJBAR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return CONJBAR_INTERNAL;
  }
}

conjbar_status fail(conjbar_status status, const char* message) {
  g_last_error = message;
  return status;
}

std::size_t packed_size(const ConeDescriptor& c) {
  return c.head_size() + (c.has_persp() ? 1 : 0) + c.vec_size() + c.mat_rows() * c.mat_cols();
}

ConePoint unpack(const ConeDescriptor& c, const double* x) {
  ConePoint p = conjbar::zero_point(c);
  std::size_t k = 0;
  for (Eigen::Index i = 0; i < p.head.size(); ++i) p.head[i] = x[k++];
  if (c.has_persp()) p.persp = x[k++];
  for (Eigen::Index i = 0; i < p.vec.size(); ++i) p.vec[i] = x[k++];
  for (Eigen::Index i = 0; i < p.mat.rows(); ++i) {
    for (Eigen::Index j = 0; j < p.mat.cols(); ++j) p.mat(i, j) = x[k++];
  }
  return p;
}

void pack(const ConeDescriptor& c, const ConePoint& p, double* x) {
  std::size_t k = 0;
  for (Eigen::Index i = 0; i < p.head.size(); ++i) x[k++] = p.head[i];
  if (c.has_persp()) x[k++] = p.persp;
  for (Eigen::Index i = 0; i < p.vec.size(); ++i) x[k++] = p.vec[i];
  for (Eigen::Index i = 0; i < p.mat.rows(); ++i) {
    for (Eigen::Index j = 0; j < p.mat.cols(); ++j) x[k++] = p.mat(i, j);
  }
}

ConeDescriptor make_descriptor(conjbar_family family, int d1, int d2, const double* alpha,
                               std::size_t alpha_len) {
  const bool needs_alpha = family == CONJBAR_HPOWER || family == CONJBAR_RPOWER;
  if (needs_alpha) {
    if (alpha == nullptr || alpha_len != static_cast<std::size_t>(d2) || d2 < 1) {
      throw conjbar::InvalidArgument("power weights of length d2 are required");
    }
  } else if (alpha != nullptr) {
    throw conjbar::InvalidArgument("this family takes no power weights");
  }
  auto powers = [&] {
    return conjbar::PowerParams(Eigen::Map<const Eigen::VectorXd>(alpha, d2));
  };
  switch (family) {
    case CONJBAR_LOG:
      return ConeDescriptor::log(d2);
    case CONJBAR_LOGDET:
      return ConeDescriptor::logdet(d2);
    case CONJBAR_HPOWER:
      return ConeDescriptor::hpower(powers());
    case CONJBAR_HGEOM:
      return ConeDescriptor::hgeom(d2);
    case CONJBAR_RTDET:
      return ConeDescriptor::rtdet(d2);
    case CONJBAR_RPOWER:
      return ConeDescriptor::rpower(d1, powers());
    case CONJBAR_RGEOM:
      return ConeDescriptor::rgeom(d2);
    case CONJBAR_LINF:
      return ConeDescriptor::linf(d2);
    case CONJBAR_LSPEC:
      return ConeDescriptor::lspec(d1, d2);
  }
  throw conjbar::InvalidArgument("unknown cone family");
}

void fill_info(conjbar_conj_info* info, const conjbar::ConjugateResult& r, int newton_status) {
  if (info == nullptr) return;
  info->iterations = r.iterations;
  info->residual = r.residual;
  info->converged = r.converged ? 1 : 0;
  info->newton_status = newton_status;
}

const conjbar::Family kFamilies[] = {
    conjbar::Family::kLog,    conjbar::Family::kLogDet, conjbar::Family::kHPower,
    conjbar::Family::kHGeom,  conjbar::Family::kRtDet,  conjbar::Family::kRPower,
    conjbar::Family::kRGeom,  conjbar::Family::kLInf,   conjbar::Family::kLSpec,
};

conjbar_family to_c(conjbar::Family f) {
  for (int i = 0; i < 9; ++i) {
    if (kFamilies[i] == f) return static_cast<conjbar_family>(i);
  }
  return CONJBAR_LOG;
}

}  // namespace

extern "C" {

const char* conjbar_last_error(void) { return g_last_error.c_str(); }

const char* conjbar_status_string(conjbar_status status) {
  switch (status) {
    case CONJBAR_OK:
      return "ok";
    case CONJBAR_INVALID_ARGUMENT:
      return "invalid argument";
    case CONJBAR_SHAPE:
      return "shape mismatch";
    case CONJBAR_NOT_INTERIOR:
      return "point not interior";
    case CONJBAR_NOT_POSITIVE_DEFINITE:
      return "not positive definite";
    case CONJBAR_DOMAIN:
      return "domain error";
    case CONJBAR_NOT_CONVERGED:
      return "not converged";
    case CONJBAR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

conjbar_status conjbar_cone_create(conjbar_family family, int d1, int d2, const double* alpha,
                                   size_t alpha_len, conjbar_cone** out) {
  if (out == nullptr) return fail(CONJBAR_INVALID_ARGUMENT, "out is NULL");
  *out = nullptr;
  return guarded([&] {
    *out = new conjbar_cone{make_descriptor(family, d1, d2, alpha, alpha_len)};
    return CONJBAR_OK;
  });
}

void conjbar_cone_destroy(conjbar_cone* cone) { delete cone; }

double conjbar_cone_nu(const conjbar_cone* cone) { return cone ? cone->desc.nu() : 0.0; }

size_t conjbar_cone_dim(const conjbar_cone* cone) { return cone ? packed_size(cone->desc) : 0; }

conjbar_status conjbar_in_interior(const conjbar_cone* cone, const double* w, int* out) {
  if (!cone || !w || !out) return fail(CONJBAR_INVALID_ARGUMENT, "NULL argument");
  return guarded([&] {
    *out = conjbar::in_interior(cone->desc, unpack(cone->desc, w)) ? 1 : 0;
    return CONJBAR_OK;
  });
}

conjbar_status conjbar_dual_in_interior(const conjbar_cone* cone, const double* r, int* out) {
  if (!cone || !r || !out) return fail(CONJBAR_INVALID_ARGUMENT, "NULL argument");
  return guarded([&] {
    *out = conjbar::dual_in_interior(cone->desc, unpack(cone->desc, r)) ? 1 : 0;
    return CONJBAR_OK;
  });
}

conjbar_status conjbar_barrier_value(const conjbar_cone* cone, const double* w, double* out) {
  if (!cone || !w || !out) return fail(CONJBAR_INVALID_ARGUMENT, "NULL argument");
  return guarded([&] {
    *out = conjbar::barrier_value(cone->desc, unpack(cone->desc, w));
    return CONJBAR_OK;
  });
}

conjbar_status conjbar_barrier_gradient(const conjbar_cone* cone, const double* w,
                                        double* g_out) {
  if (!cone || !w || !g_out) return fail(CONJBAR_INVALID_ARGUMENT, "NULL argument");
  return guarded([&] {
    pack(cone->desc, conjbar::barrier_gradient(cone->desc, unpack(cone->desc, w)), g_out);
    return CONJBAR_OK;
  });
}

conjbar_status conjbar_hessian_apply(const conjbar_cone* cone, const double* w, const double* x,
                                     double* out) {
  if (!cone || !w || !x || !out) return fail(CONJBAR_INVALID_ARGUMENT, "NULL argument");
  return guarded([&] {
    const ConePoint y =
        conjbar::hessian_apply(cone->desc, unpack(cone->desc, w), unpack(cone->desc, x));
    pack(cone->desc, y, out);
    return CONJBAR_OK;
  });
}

conjbar_status conjbar_inverse_hessian_apply(const conjbar_cone* cone, const double* w,
                                             const double* x, double* out) {
  if (!cone || !w || !x || !out) return fail(CONJBAR_INVALID_ARGUMENT, "NULL argument");
  return guarded([&] {
    const ConePoint y = conjbar::inverse_hessian_apply(cone->desc, unpack(cone->desc, w),
                                                       unpack(cone->desc, x));
    pack(cone->desc, y, out);
    return CONJBAR_OK;
  });
}

conjbar_status conjbar_conjugate_gradient(const conjbar_cone* cone, const double* r,
                                          double* g_out, conjbar_conj_info* info) {
  if (!cone || !r || !g_out) return fail(CONJBAR_INVALID_ARGUMENT, "NULL argument");
  return guarded([&] {
    const conjbar::ConjugateResult res =
        conjbar::conjugate_gradient(cone->desc, unpack(cone->desc, r));
    pack(cone->desc, res.g_star, g_out);
    fill_info(info, res, 0);
    if (!res.converged) return fail(CONJBAR_NOT_CONVERGED, "root finder did not converge");
    return CONJBAR_OK;
  });
}

conjbar_status conjbar_conjugate_value(const conjbar_cone* cone, const double* r, double* out) {
  if (!cone || !r || !out) return fail(CONJBAR_INVALID_ARGUMENT, "NULL argument");
  return guarded([&] {
    *out = conjbar::conjugate_value(cone->desc, unpack(cone->desc, r));
    return CONJBAR_OK;
  });
}

conjbar_status conjbar_generic_conjugate_gradient(const conjbar_cone* cone, const double* r,
                                                  double eps, const double* w0, double* g_out,
                                                  conjbar_conj_info* info) {
  if (!cone || !r || !g_out) return fail(CONJBAR_INVALID_ARGUMENT, "NULL argument");
  return guarded([&] {
    conjbar::NewtonOptions options;
    if (eps > 0.0) options.eps = eps;
    std::optional<ConePoint> start;
    if (w0 != nullptr) start = unpack(cone->desc, w0);
    const auto [res, trace] =
        conjbar::generic_conjugate_gradient(cone->desc, unpack(cone->desc, r), options, start);
    pack(cone->desc, res.g_star, g_out);
    fill_info(info, res, static_cast<int>(trace.status));
    if (trace.status != conjbar::NewtonStatus::kConverged &&
        trace.status != conjbar::NewtonStatus::kStalled) {
      return fail(CONJBAR_NOT_CONVERGED,
                  std::string(conjbar::newton_status_name(trace.status)).c_str());
    }
    return CONJBAR_OK;
  });
}

void conjbar_experiment_config_default(conjbar_experiment_config* config) {
  static const conjbar_family cones[] = {CONJBAR_LOG,    CONJBAR_HPOWER, CONJBAR_HGEOM,
                                         CONJBAR_RPOWER, CONJBAR_RGEOM,  CONJBAR_LINF};
  static const int dims[] = {20, 40, 60};
  static const double offsets[] = {1e-5, 1e-4, 1e-3, 1e-2, 1e-1};
  if (config == nullptr) return;
  const conjbar::ExperimentConfig d = conjbar::ExperimentConfig::table_defaults();
  config->cones = cones;
  config->num_cones = 6;
  config->dims = dims;
  config->num_dims = 3;
  config->offsets = offsets;
  config->num_offsets = 5;
  config->trials = d.trials;
  config->seed = d.seed;
  config->eps = d.eps;
  config->rpower_d1 = d.rpower_d1;
  config->threads = 1;
}

conjbar_status conjbar_experiment_run(const conjbar_experiment_config* config,
                                      conjbar_experiment** out) {
  if (!config || !out) return fail(CONJBAR_INVALID_ARGUMENT, "NULL argument");
  *out = nullptr;
  return guarded([&] {
    conjbar::ExperimentConfig c;
    for (size_t i = 0; i < config->num_cones; ++i) {
      const int f = static_cast<int>(config->cones[i]);
      if (f < 0 || f > 8) throw conjbar::InvalidArgument("unknown cone family");
      c.cones.push_back(kFamilies[f]);
    }
    c.dims.assign(config->dims, config->dims + config->num_dims);
    c.offsets.assign(config->offsets, config->offsets + config->num_offsets);
    c.trials = config->trials;
    c.seed = config->seed;
    c.eps = config->eps;
    c.rpower_d1 = config->rpower_d1;
    c.threads = config->threads;
    auto exp = std::make_unique<conjbar_experiment>();
    exp->stats = conjbar::run_grid(c);
    *out = exp.release();
    return CONJBAR_OK;
  });
}

size_t conjbar_experiment_cell_count(const conjbar_experiment* exp) {
  return exp ? exp->stats.size() : 0;
}

conjbar_status conjbar_experiment_cell(const conjbar_experiment* exp, size_t index,
                                       conjbar_cell_stats* out) {
  if (!exp || !out) return fail(CONJBAR_INVALID_ARGUMENT, "NULL argument");
  if (index >= exp->stats.size()) return fail(CONJBAR_INVALID_ARGUMENT, "index out of range");
  const conjbar::IterationStats& s = exp->stats[index];
  out->cone = to_c(s.cone);
  out->d = s.d;
  out->offset = s.offset;
  out->trials = s.trials;
  out->mean_iters_generic = s.mean_generic;
  out->mean_iters_specialized = s.mean_specialized;
  out->mean_residual_generic = s.mean_residual_generic;
  out->mean_residual_specialized = s.mean_residual_specialized;
  out->failures = s.failures;
  return CONJBAR_OK;
}

conjbar_status conjbar_experiment_render(const conjbar_experiment* exp, conjbar_format format,
                                         char** out) {
  if (!exp || !out) return fail(CONJBAR_INVALID_ARGUMENT, "NULL argument");
  *out = nullptr;
  return guarded([&] {
    const std::string text = conjbar::render_table(
        exp->stats, format == CONJBAR_FORMAT_MARKDOWN ? conjbar::OutputFormat::kMarkdown
                                                      : conjbar::OutputFormat::kCsv);
    char* buf = static_cast<char*>(std::malloc(text.size() + 1));
    if (buf == nullptr) throw std::bad_alloc();
    std::memcpy(buf, text.c_str(), text.size() + 1);
    *out = buf;
    return CONJBAR_OK;
  });
}

void conjbar_experiment_destroy(conjbar_experiment* exp) { delete exp; }

void conjbar_string_free(char* s) { std::free(s); }

}  // extern "C"
