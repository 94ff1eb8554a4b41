#ifndef RELSEM_RELSEM_HPP
#define RELSEM_RELSEM_HPP

// Umbrella header: the whole engine.

#include "relsem/audit.hpp"
#include "relsem/compositional.hpp"
#include "relsem/direct.hpp"
#include "relsem/errors.hpp"
#include "relsem/generator.hpp"
#include "relsem/interpretation.hpp"
#include "relsem/relation.hpp"
#include "relsem/rng.hpp"
#include "relsem/serialize.hpp"
#include "relsem/syntax.hpp"
#include "relsem/version.hpp"

#endif  // RELSEM_RELSEM_HPP
