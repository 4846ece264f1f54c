#pragma once

// Lie algebras of polynomial vector fields on affine varieties over Q:
// exact polynomial arithmetic, Groebner/syzygy engine, derivation modules,
// smoothness certificates, jets, constructive simplicity witnesses, and the
// worked sphere / hyperelliptic / algebraic-group structures.

#include "rational.hpp"
#include "monomial.hpp"
#include "polynomial.hpp"
#include "parse.hpp"
#include "linalg.hpp"
#include "groebner.hpp"
#include "variety.hpp"
#include "vector_field.hpp"
#include "jet.hpp"
#include "witness.hpp"
#include "sphere.hpp"
#include "hyperelliptic.hpp"
#include "algebraic_group.hpp"
