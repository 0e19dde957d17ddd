#pragma once

#include "integer.hpp"
#include "primes.hpp"
#include "factor.hpp"
#include "crt.hpp"
#include "polynomial.hpp"
#include "fp_poly.hpp"
#include "resultant.hpp"
#include "sturm.hpp"
#include "family.hpp"
#include "errors.hpp"
#include "paramsearch.hpp"
#include "sieve.hpp"
#include "certify.hpp"
#include "pipeline.hpp"
#include "serialize.hpp"
