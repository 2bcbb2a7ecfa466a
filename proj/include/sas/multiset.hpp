#pragma once

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <map>
#include <string>
#include <utility>

#include "sas/error.hpp"

namespace sas {

// A bag: each element maps to a positive multiplicity; absent means zero.
// Iteration order follows Compare, which keeps every consumer deterministic.
template <class T, class Compare = std::less<T>>
class Multiset {
public:
    using count_type = std::uint64_t;
    using storage_type = std::map<T, count_type, Compare>;
    using const_iterator = typename storage_type::const_iterator;

    Multiset() = default;

    Multiset(std::initializer_list<std::pair<T, count_type>> entries) {
        for (const auto& [element, n] : entries) add(element, n);
    }

    static Multiset of(std::initializer_list<T> elements) {
        Multiset s;
        for (const auto& e : elements) s.add(e, 1);
        return s;
    }

    count_type count(const T& element) const {
        auto it = entries_.find(element);
        return it == entries_.end() ? 0 : it->second;
    }

    bool contains(const T& element) const { return entries_.count(element) != 0; }

    // Sum of multiplicities, |s|.
    count_type cardinality() const noexcept { return total_; }

    // Number of distinct elements.
    std::size_t distinct() const noexcept { return entries_.size(); }

    bool empty() const noexcept { return total_ == 0; }

    void add(const T& element, count_type n = 1) {
        if (n == 0) return;
        entries_[element] += n;
        total_ += n;
    }

    void remove(const T& element, count_type n = 1) {
        if (n == 0) return;
        auto it = entries_.find(element);
        const count_type held = it == entries_.end() ? 0 : it->second;
        if (held < n) {
            throw Error(ErrorCode::InsufficientMultiplicity,
                        "cannot remove " + std::to_string(n) + " of an element held " +
                            std::to_string(held) + " times");
        }
        it->second -= n;
        total_ -= n;
        if (it->second == 0) entries_.erase(it);
    }

    Multiset& operator+=(const Multiset& other) {
        for (const auto& [element, n] : other.entries_) add(element, n);
        return *this;
    }

    const_iterator begin() const noexcept { return entries_.begin(); }
    const_iterator end() const noexcept { return entries_.end(); }

    friend bool operator==(const Multiset& a, const Multiset& b) { return a.entries_ == b.entries_; }

private:
    storage_type entries_;
    count_type total_ = 0;
};

template <class T, class C>
typename Multiset<T, C>::count_type cardinality(const Multiset<T, C>& s) {
    return s.cardinality();
}

// Additive union: multiplicities add.
template <class T, class C>
Multiset<T, C> bag_sum(Multiset<T, C> a, const Multiset<T, C>& b) {
    a += b;
    return a;
}

template <class T, class C>
Multiset<T, C> remove(Multiset<T, C> s, const T& element, typename Multiset<T, C>::count_type n) {
    s.remove(element, n);
    return s;
}

// Keep only the elements satisfying pred.
template <class T, class C, class Pred>
Multiset<T, C> filter(const Multiset<T, C>& s, Pred pred) {
    Multiset<T, C> out;
    for (const auto& [element, n] : s)
        if (pred(element)) out.add(element, n);
    return out;
}

} // namespace sas
