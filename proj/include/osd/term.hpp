#pragma once

#include <cstdint>
#include <memory>
#include <ostream>
#include <stdexcept>
#include <string>

#include "osd/var_table.hpp"

namespace osd {

enum class Op : std::uint8_t { Plus, Times };

/// Immutable term over {+, ×} and variables. Subterms are shared, so a
/// term is a DAG whose tree size may be exponential in its node count.
class Term {
public:
    static Term var(VarId v);
    static Term plus(Term l, Term r);
    static Term times(Term l, Term r);
    static Term apply(Op op, Term l, Term r);

    inline bool is_var() const;
    inline VarId var_id() const;
    inline Op op() const;
    bool is_plus() const { return !is_var() && op() == Op::Plus; }
    bool is_times() const { return !is_var() && op() == Op::Times; }
    inline const Term& left() const;
    inline const Term& right() const;

    /// Number of nodes of the unfolded tree, saturating at UINT64_MAX.
    inline std::uint64_t tree_size() const;
    inline std::size_t hash() const;
    const void* identity() const { return node_.get(); }

    friend bool operator==(const Term& a, const Term& b);

private:
    struct Node;
    explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

struct Term::Node {
    bool is_var = false;
    Op op = Op::Plus;
    VarId var{};
    std::uint64_t size = 1;
    std::size_t hash = 0;
    Term left{nullptr};
    Term right{nullptr};
};

bool Term::is_var() const { return node_->is_var; }
VarId Term::var_id() const { return node_->var; }
Op Term::op() const { return node_->op; }
const Term& Term::left() const { return node_->left; }
const Term& Term::right() const { return node_->right; }
std::uint64_t Term::tree_size() const { return node_->size; }
std::size_t Term::hash() const { return node_->hash; }

class MaterializationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kDefaultMaterializationCap = std::uint64_t{1} << 20;

/// Normal form under X×(Y+Z) → X×Y + X×Z. Throws MaterializationError if
/// the result's tree size exceeds `cap`.
Term normalize(const Term& t, std::uint64_t cap = kDefaultMaterializationCap);

bool is_normal(const Term& t);
bool e_equal(const Term& a, const Term& b, std::uint64_t cap = kDefaultMaterializationCap);

/// Fully parenthesized rendering, e.g. `((a * b) + c)`.
std::string to_string(const Term& t, const VarTable& vars);

}  // namespace osd
