#pragma once

#include <memory>
#include <mutex>
#include <stdexcept>
#include <utility>
#include <vector>

#include "suq2/core/operator.hpp"

namespace suq2 {

// Expression tree over kernel operators, evaluated only by matrix-vector
// action (right to left for products).
class LazyOperator {
public:
    enum class Kind { Leaf, Product, Sum, Adjoint, Scaled };

    LazyOperator() = default;
    LazyOperator(const Operator& op)  // NOLINT(google-explicit-constructor)
        : node_(std::make_shared<Node>()) {
        node_->kind = Kind::Leaf;
        node_->leaf = std::make_shared<const Operator>(op);
        node_->space = op.space();
    }
    explicit LazyOperator(std::shared_ptr<const Operator> op) : node_(std::make_shared<Node>()) {
        node_->kind = Kind::Leaf;
        node_->space = op->space();
        node_->leaf = std::move(op);
    }

    const Space& space() const { return node_->space; }
    Kind kind() const { return node_->kind; }

    Vec apply(const Vec& v) const {
        if (v.size() != space().dim()) throw std::invalid_argument("LazyOperator: window mismatch");
        return eval(*node_, v, false);
    }
    Vec apply_adjoint(const Vec& v) const {
        if (v.size() != space().dim()) throw std::invalid_argument("LazyOperator: window mismatch");
        return eval(*node_, v, true);
    }

    LazyOperator adjoint() const { return unary(Kind::Adjoint, 1.0); }
    LazyOperator scaled(cplx s) const { return unary(Kind::Scaled, s); }

    friend LazyOperator operator*(const LazyOperator& a, const LazyOperator& b) {
        return binary(Kind::Product, a, b);
    }
    friend LazyOperator operator+(const LazyOperator& a, const LazyOperator& b) {
        return binary(Kind::Sum, a, b);
    }
    friend LazyOperator operator-(const LazyOperator& a, const LazyOperator& b) {
        return binary(Kind::Sum, a, b.scaled(-1.0));
    }

    static LazyOperator product(const std::vector<LazyOperator>& factors) {
        if (factors.empty()) throw std::invalid_argument("LazyOperator::product: no factors");
        LazyOperator out = factors.front();
        for (std::size_t i = 1; i < factors.size(); ++i) out = out * factors[i];
        return out;
    }

private:
    struct Node {
        Kind kind = Kind::Leaf;
        Space space;
        std::shared_ptr<const Operator> leaf;
        std::vector<std::shared_ptr<const Node>> kids;
        cplx scale = 1.0;
        mutable std::once_flag adj_once;
        mutable std::shared_ptr<const Operator> leaf_adjoint;
    };

    LazyOperator unary(Kind k, cplx s) const {
        LazyOperator out;
        out.node_ = std::make_shared<Node>();
        out.node_->kind = k;
        out.node_->space = space();
        out.node_->scale = s;
        out.node_->kids = {node_};
        return out;
    }
    static LazyOperator binary(Kind k, const LazyOperator& a, const LazyOperator& b) {
        if (a.space() != b.space()) throw std::invalid_argument("LazyOperator: window mismatch");
        LazyOperator out;
        out.node_ = std::make_shared<Node>();
        out.node_->kind = k;
        out.node_->space = a.space();
        out.node_->kids = {a.node_, b.node_};
        return out;
    }

    static Vec eval(const Node& n, const Vec& v, bool adj) {
        switch (n.kind) {
            case Kind::Leaf:
                if (!adj) return n.leaf->apply(v);
                std::call_once(n.adj_once, [&n] { n.leaf_adjoint = std::make_shared<const Operator>(n.leaf->adjoint()); });
                return n.leaf_adjoint->apply(v);
            case Kind::Product:
                // (AB)v = A(Bv), (AB)*v = B*(A*v)
                if (!adj) return eval(*n.kids[0], eval(*n.kids[1], v, false), false);
                return eval(*n.kids[1], eval(*n.kids[0], v, true), true);
            case Kind::Sum:
                return eval(*n.kids[0], v, adj) + eval(*n.kids[1], v, adj);
            case Kind::Adjoint:
                return eval(*n.kids[0], v, !adj);
            case Kind::Scaled:
                return (adj ? std::conj(n.scale) : n.scale) * eval(*n.kids[0], v, adj);
        }
        return v;
    }

    std::shared_ptr<Node> node_;
};

}  // namespace suq2
