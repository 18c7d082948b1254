#ifndef OSCSTAB_OSCSTAB_HPP
#define OSCSTAB_OSCSTAB_HPP

#include "adapt.hpp"
#include "algebraic.hpp"
#include "coeff.hpp"
#include "errors.hpp"
#include "jet.hpp"
#include "norms.hpp"
#include "oracle.hpp"
#include "polygon.hpp"
#include "rational.hpp"
#include "report.hpp"
#include "roots.hpp"
#include "stability.hpp"
#include "verify.hpp"

#endif  // OSCSTAB_OSCSTAB_HPP
