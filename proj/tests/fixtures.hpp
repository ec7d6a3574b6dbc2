#pragma once

#include <map>
#include <memory>
#include <tuple>

#include "kleincl/constructions.hpp"
#include "kleincl/klein.hpp"

namespace fixtures {

struct Instance {
    std::unique_ptr<kleincl::Field> field;
    std::unique_ptr<kleincl::Geometry> geom;
    std::unique_ptr<kleincl::KleinModel> klein;
};

/// Cached Klein-quadric instances, keyed by (p, h, t); building the q = 8
/// tables once keeps the suites fast.
inline const Instance& instance(unsigned p, unsigned h, unsigned t) {
    static std::map<std::tuple<unsigned, unsigned, unsigned>, Instance> cache;
    auto key = std::make_tuple(p, h, t);
    auto it = cache.find(key);
    if (it == cache.end()) {
        Instance inst;
        inst.field = std::make_unique<kleincl::Field>(p, h, t);
        inst.geom = std::make_unique<kleincl::Geometry>(*inst.field);
        inst.klein = std::make_unique<kleincl::KleinModel>(*inst.geom);
        it = cache.emplace(key, std::move(inst)).first;
    }
    return it->second;
}

inline const Instance& q2() { return instance(2, 1, 1); }
inline const Instance& q3() { return instance(3, 1, 1); }
inline const Instance& q4() { return instance(2, 1, 2); }   // GF(4) as a tower over GF(2)
inline const Instance& q8() { return instance(2, 1, 3); }   // GF(8) as a tower over GF(2)

}  // namespace fixtures
