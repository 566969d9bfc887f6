#pragma once

#include "mfs/domain.hpp"
#include "mfs/expr.hpp"
#include "mfs/report.hpp"

namespace mfs {

struct ForceBalanceTolerances {
  double force = 1e-8;
  double divergence = 1e-8;
};

/// |w x (curl w) - grad chi| and |div w| at every sample. Checks are named
/// "force_balance" and "divergence".
ResidualReport force_balance_residual(const VectorField& w, const ScalarField& chi, const SampleSet& samples,
                                      ForceBalanceTolerances tol = {});

/// |curl w - h w| and |div w| at every sample, named "beltrami" and
/// "divergence".
ResidualReport beltrami_residual(const VectorField& w, const ScalarField& h, const SampleSet& samples,
                                 double tolerance = 1e-8);

/// Largest |w| over the samples (points that fail to evaluate are skipped).
double max_magnitude(const VectorField& w, const SampleSet& samples);

}  // namespace mfs
