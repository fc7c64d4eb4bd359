#include "symrig/nelder_mead.hpp"

#include <cmath>
#include <exception>
#include <limits>
#include <memory>
#include <mutex>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include "symrig/errors.hpp"

namespace symrig {

namespace {

struct Objective {
  const std::function<double(const std::vector<double>&)>* f;
  std::vector<double> scratch;
  std::exception_ptr error;
};

double trampoline(const gsl_vector* v, void* params) {
  auto* obj = static_cast<Objective*>(params);
  if (obj->error) return std::numeric_limits<double>::max();
  for (std::size_t i = 0; i < v->size; ++i) obj->scratch[i] = gsl_vector_get(v, i);
  try {
    const double y = (*obj->f)(obj->scratch);
    return std::isfinite(y) ? y : std::numeric_limits<double>::max();
  } catch (...) {
    obj->error = std::current_exception();
    return std::numeric_limits<double>::max();
  }
}

}  // namespace

MinimizeResult nelder_mead(const std::function<double(const std::vector<double>&)>& f, std::vector<double> x0,
                           double step, int max_iter, double size_tol) {
  const std::size_t n = x0.size();
  static std::once_flag quiet;
  std::call_once(quiet, [] { gsl_set_error_handler_off(); });
  MinimizeResult res;
  if (n == 0) {
    res.x = x0;
    res.value = f(x0);
    return res;
  }
  Objective obj{&f, std::vector<double>(n), nullptr};
  gsl_multimin_function fn{&trampoline, n, &obj};
  std::unique_ptr<gsl_vector, void (*)(gsl_vector*)> x(gsl_vector_alloc(n), gsl_vector_free);
  std::unique_ptr<gsl_vector, void (*)(gsl_vector*)> ss(gsl_vector_alloc(n), gsl_vector_free);
  for (std::size_t i = 0; i < n; ++i) gsl_vector_set(x.get(), i, x0[i]);
  gsl_vector_set_all(ss.get(), step);
  std::unique_ptr<gsl_multimin_fminimizer, void (*)(gsl_multimin_fminimizer*)> m(
      gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, n), gsl_multimin_fminimizer_free);
  gsl_multimin_fminimizer_set(m.get(), &fn, x.get(), ss.get());
  int it = 0;
  for (; it < max_iter; ++it) {
    if (gsl_multimin_fminimizer_iterate(m.get()) != GSL_SUCCESS) break;
    if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(m.get()), size_tol) == GSL_SUCCESS) break;
  }
  if (obj.error) std::rethrow_exception(obj.error);
  res.x.resize(n);
  for (std::size_t i = 0; i < n; ++i) res.x[i] = gsl_vector_get(m->x, i);
  res.value = m->fval;
  res.iterations = it;
  return res;
}

}  // namespace symrig
