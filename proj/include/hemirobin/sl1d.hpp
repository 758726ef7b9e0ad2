#ifndef HEMIROBIN_SL1D_HPP
#define HEMIROBIN_SL1D_HPP

namespace hemirobin::sl1d {

// One-dimensional companion problems on [0,1]:
//
//   robin:  -u'' = lambda u,  -u'(0) + sigma u(0) = 0,  u'(1) = 0.
//           With u = cos(k(1-x)), k = sqrt(lambda), the boundary condition at
//           0 reads -k sin k + sigma cos k = 0, i.e. the secular equation
//           g(k) = k sin k - sigma cos k = 0  (equivalently tan k = sigma/k).
//           lambda_n - pi^2 n^2 -> 2 sigma.
//
//   step:   -u'' + (sigma/eps) 1_{(0,eps)} u = mu u, u'(0) = u'(1) = 0,
//           matched through the potential step; mu_n - pi^2 n^2 -> sigma.
//
// Indexing: the n-th eigenvalue is the secular root bracketed by
// k in (pi(n - 1/2), pi(n + 1/2)); for sigma = 0 this is exactly pi^2 n^2.

/// Secular function of the Robin problem, g(k) = k sin k - sigma cos k.
double robin_secular(double sigma, double k);

/// n-th positive-branch Robin eigenvalue by bisection to 1e-12 in k.
double robin_eigenvalue(double sigma, int n);

/// Secular function of the step problem at mu (transfer-matrix matching at
/// x = eps; hyperbolic branch used automatically when mu < sigma/eps).
double step_secular(double sigma, double eps, double mu);

/// n-th step-problem eigenvalue; the root is located inside the bracket
/// k in (pi(n-1/2), pi(n+1/2)) by scanning for the sign change nearest the
/// expected position, then bisected to 1e-12. Throws when no sign change is
/// found (turning-point regime or invalid parameters).
double step_eigenvalue(double sigma, double eps, int n);

}  // namespace hemirobin::sl1d

#endif
