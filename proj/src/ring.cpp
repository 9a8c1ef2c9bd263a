#include "polyid/ring.hpp"

#include <stdexcept>

namespace polyid {

Ring::Ring(std::vector<std::string> names, std::optional<std::size_t> split)
    : names_(std::move(names)), split_(split) {
    if (split_ && *split_ > names_.size())
        throw std::invalid_argument("Ring: block split out of range");
    for (std::size_t i = 0; i < names_.size(); ++i) {
        if (names_[i].empty()) throw std::invalid_argument("Ring: empty variable name");
        if (!index_.emplace(names_[i], i).second)
            throw std::invalid_argument("Ring: duplicate variable name " + names_[i]);
    }
}

RingPtr Ring::make(std::vector<std::string> names, std::optional<std::size_t> split) {
    return RingPtr(new Ring(std::move(names), split));
}

std::optional<std::size_t> Ring::index_of(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

RingPtr Ring::parameter_ring() const {
    std::vector<std::string> tnames(names_.begin() + split_or_arity(), names_.end());
    return make(std::move(tnames));
}

RingPtr Ring::restrict(const std::vector<bool>& keep) const {
    if (keep.size() != names_.size())
        throw std::invalid_argument("Ring::restrict: mask size mismatch");
    std::vector<std::string> kept;
    std::size_t kept_x = 0;
    for (std::size_t i = 0; i < names_.size(); ++i) {
        if (!keep[i]) continue;
        kept.push_back(names_[i]);
        if (i < split_or_arity()) ++kept_x;
    }
    std::optional<std::size_t> split;
    if (split_ && kept_x < kept.size()) split = kept_x;
    return make(std::move(kept), split);
}

}  // namespace polyid
