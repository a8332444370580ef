#ifndef HYBRIDCP_DOMAIN_HPP
#define HYBRIDCP_DOMAIN_HPP

#include <cstdint>
#include <vector>

namespace hybridcp {

enum class DomainChange { Unchanged, Changed, Emptied };

/**
 * Finite integer domain, either enumerated (holes allowed) or a bounded
 * range (only the bounds move).
 *
 * An enumerated domain keeps one presence flag per value of its initial
 * range; flags outside the current [min, max] are stale and ignored. A
 * mutation that would empty the domain reports Emptied and leaves the
 * domain untouched.
 */
class IntDomain {
public:
    using value_type = std::int64_t;

    static IntDomain enumerated(value_type lb, value_type ub);
    /// `values` need not be sorted; duplicates are ignored.
    static IntDomain enumerated(std::vector<value_type> values);
    static IntDomain bounded(value_type lb, value_type ub);

    bool is_enumerated() const noexcept { return enumerated_; }
    value_type min() const noexcept { return lb_; }
    value_type max() const noexcept { return ub_; }
    std::uint64_t size() const noexcept { return size_; }
    bool is_fixed() const noexcept { return lb_ == ub_; }
    bool contains(value_type v) const noexcept;
    /// Smallest value > v, or max() + 1 when there is none.
    value_type next(value_type v) const noexcept;
    std::vector<value_type> values() const;

    DomainChange restrict_bounds(value_type lb, value_type ub);
    /// For bounded domains only a bound value can be removed.
    DomainChange remove(value_type v);

    // Trail restoration hooks.
    void restore_bounds(value_type lb, value_type ub, std::uint64_t size) noexcept
    {
        lb_ = lb;
        ub_ = ub;
        size_ = size;
    }
    void restore_value(value_type v) noexcept { present_[index(v)] = 1; }

    friend bool operator==(const IntDomain&, const IntDomain&) = default;

private:
    IntDomain() = default;

    std::size_t index(value_type v) const noexcept { return static_cast<std::size_t>(v - offset_); }
    bool present(value_type v) const noexcept;
    std::uint64_t count(value_type lb, value_type ub) const noexcept;

    bool enumerated_ = false;
    value_type lb_ = 0;
    value_type ub_ = 0;
    std::uint64_t size_ = 0;
    value_type offset_ = 0;
    std::vector<std::uint8_t> present_;
};

} // namespace hybridcp

#endif // HYBRIDCP_DOMAIN_HPP
