#ifndef POLYID_RING_HPP
#define POLYID_RING_HPP

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace polyid {

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

/// An ordered list of distinct variable names, optionally split into a
/// leading x-block and a trailing t-block (parameters). Rings are immutable
/// and shared; polynomials hold a RingPtr.
class Ring {
public:
    static RingPtr make(std::vector<std::string> names,
                        std::optional<std::size_t> block_split = std::nullopt);

    std::size_t arity() const { return names_.size(); }
    const std::string& name(std::size_t i) const { return names_[i]; }
    const std::vector<std::string>& names() const { return names_; }
    std::optional<std::size_t> block_split() const { return split_; }

    /// Index of the x/t boundary for ordering purposes: block_split when
    /// set, otherwise the full arity (everything in the x-block).
    std::size_t split_or_arity() const { return split_ ? *split_ : names_.size(); }
    bool has_parameters() const { return split_ && *split_ < names_.size(); }

    std::optional<std::size_t> index_of(const std::string& name) const;

    /// The t-block as a standalone ring (no split).
    RingPtr parameter_ring() const;

    /// The sub-ring keeping exactly the variables with keep[i]==true,
    /// in their original order. The block split is carried over when it
    /// still makes sense (all kept x-vars precede all kept t-vars).
    RingPtr restrict(const std::vector<bool>& keep) const;

    friend bool same_ring(const Ring& a, const Ring& b) {
        return &a == &b || (a.names_ == b.names_ && a.split_ == b.split_);
    }

private:
    Ring(std::vector<std::string> names, std::optional<std::size_t> split);

    std::vector<std::string> names_;
    std::optional<std::size_t> split_;
    std::unordered_map<std::string, std::size_t> index_;
};

inline bool same_ring(const RingPtr& a, const RingPtr& b) { return same_ring(*a, *b); }

}  // namespace polyid

#endif
