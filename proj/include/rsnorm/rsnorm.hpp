#ifndef RSNORM_RSNORM_HPP
#define RSNORM_RSNORM_HPP

#include "classify.hpp"
#include "corpus.hpp"
#include "curve.hpp"
#include "groebner.hpp"
#include "morphism.hpp"
#include "parse.hpp"
#include "probe.hpp"
#include "report.hpp"

#endif // RSNORM_RSNORM_HPP
