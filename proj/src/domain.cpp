#include "hybridcp/domain.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace hybridcp {

namespace {

// Enumerated domains store one flag per value of their initial range.
constexpr std::int64_t kMaxEnumeratedSpan = std::int64_t{1} << 24;

} // namespace

IntDomain IntDomain::enumerated(value_type lb, value_type ub)
{
    if (lb > ub) {
        throw std::invalid_argument("empty domain [" + std::to_string(lb) + ", " +
                                    std::to_string(ub) + "]");
    }
    if (ub - lb >= kMaxEnumeratedSpan) {
        throw std::invalid_argument("enumerated domain too large; use a bounded domain");
    }
    IntDomain d;
    d.enumerated_ = true;
    d.lb_ = lb;
    d.ub_ = ub;
    d.offset_ = lb;
    d.size_ = static_cast<std::uint64_t>(ub - lb + 1);
    d.present_.assign(d.size_, 1);
    return d;
}

IntDomain IntDomain::enumerated(std::vector<value_type> values)
{
    if (values.empty()) {
        throw std::invalid_argument("empty domain");
    }
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    IntDomain d = enumerated(values.front(), values.back());
    std::fill(d.present_.begin(), d.present_.end(), 0);
    for (auto v : values) {
        d.present_[d.index(v)] = 1;
    }
    d.size_ = values.size();
    return d;
}

IntDomain IntDomain::bounded(value_type lb, value_type ub)
{
    if (lb > ub) {
        throw std::invalid_argument("empty domain [" + std::to_string(lb) + ", " +
                                    std::to_string(ub) + "]");
    }
    IntDomain d;
    d.lb_ = lb;
    d.ub_ = ub;
    d.size_ = static_cast<std::uint64_t>(ub - lb) + 1;
    return d;
}

bool IntDomain::present(value_type v) const noexcept
{
    return !enumerated_ || present_[index(v)] != 0;
}

bool IntDomain::contains(value_type v) const noexcept
{
    return lb_ <= v && v <= ub_ && present(v);
}

IntDomain::value_type IntDomain::next(value_type v) const noexcept
{
    if (v < lb_) {
        return lb_;
    }
    for (value_type w = v + 1; w <= ub_; ++w) {
        if (present(w)) {
            return w;
        }
    }
    return ub_ + 1;
}

std::vector<IntDomain::value_type> IntDomain::values() const
{
    std::vector<value_type> out;
    out.reserve(size_);
    for (value_type v = lb_; v <= ub_; ++v) {
        if (present(v)) {
            out.push_back(v);
        }
    }
    return out;
}

std::uint64_t IntDomain::count(value_type lb, value_type ub) const noexcept
{
    if (!enumerated_) {
        return static_cast<std::uint64_t>(ub - lb) + 1;
    }
    std::uint64_t n = 0;
    for (value_type v = lb; v <= ub; ++v) {
        n += present_[index(v)];
    }
    return n;
}

DomainChange IntDomain::restrict_bounds(value_type lb, value_type ub)
{
    lb = std::max(lb, lb_);
    ub = std::min(ub, ub_);
    if (lb > ub) {
        return DomainChange::Emptied;
    }
    // snap to present values
    while (lb <= ub && !present(lb)) {
        ++lb;
    }
    while (ub >= lb && !present(ub)) {
        --ub;
    }
    if (lb > ub) {
        return DomainChange::Emptied;
    }
    if (lb == lb_ && ub == ub_) {
        return DomainChange::Unchanged;
    }
    size_ = count(lb, ub);
    lb_ = lb;
    ub_ = ub;
    return DomainChange::Changed;
}

DomainChange IntDomain::remove(value_type v)
{
    if (!contains(v)) {
        return DomainChange::Unchanged;
    }
    if (lb_ == ub_) {
        return DomainChange::Emptied;
    }
    if (!enumerated_) {
        if (v == lb_) {
            ++lb_;
        } else if (v == ub_) {
            --ub_;
        } else {
            return DomainChange::Unchanged;
        }
        --size_;
        return DomainChange::Changed;
    }
    present_[index(v)] = 0;
    --size_;
    if (v == lb_) {
        lb_ = next(v);
    } else if (v == ub_) {
        value_type w = v - 1;
        while (!present(w)) {
            --w;
        }
        ub_ = w;
    }
    return DomainChange::Changed;
}

} // namespace hybridcp
