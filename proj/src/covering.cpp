#include "covmark/covering.hpp"

namespace covmark {

CoveringOperator::CoveringOperator(MarkovAutomaton automaton, ActionAssignment action)
    : automaton_(std::move(automaton)), action_(std::move(action)) {
    if (!(automaton_.generators() == action_.generators()))
        throw input_error("covering operator: automaton and action generator tables differ");
    spectrum_ = analyze_spectrum(automaton_);
    out_.resize(automaton_.vertex_count());
    const auto& block_of = spectrum_.decomposition.block_of;
    for (int v = 0; v < automaton_.vertex_count(); ++v) {
        for (int e : automaton_.out_edges(v)) {
            const Edge& edge = automaton_.edges()[e];
            if (block_of[edge.from] == block_of[edge.to])
                out_[v].diagonal.push_back(e);
            else
                out_[v].cross.push_back(e);
        }
    }
}

int CoveringOperator::slot_of_vertex(int v) const {
    if (v == automaton_.origin()) throw input_error("origin vertex has no slot");
    return v < automaton_.origin() ? v : v - 1;
}

int CoveringOperator::vertex_of_slot(int s) const {
    return s < automaton_.origin() ? s : s + 1;
}

Observable CoveringOperator::accumulate(const std::vector<int>& edge_indices,
                                        const CoveringElement& xi) const {
    Observable acc = CMat::Zero(dim(), dim());
    for (int e : edge_indices) {
        const Edge& edge = automaton_.edges()[e];
        acc += action_.of(edge.label).apply(xi.slot(slot_of_vertex(edge.to)));
    }
    return acc;
}

CoveringElement CoveringOperator::apply(const CoveringElement& xi) const {
    if (xi.slot_count() != slot_count() || xi.dim() != dim())
        throw input_error("covering operator: element shape mismatch");
    CoveringElement out(slot_count(), dim());
    for (int s = 0; s < slot_count(); ++s) {
        const int v = vertex_of_slot(s);
        out.slot(s) = accumulate(out_[v].diagonal, xi) + accumulate(out_[v].cross, xi);
    }
    return out;
}

CoveringElement CoveringOperator::apply_diagonal(const CoveringElement& xi) const {
    if (xi.slot_count() != slot_count() || xi.dim() != dim())
        throw input_error("covering operator: element shape mismatch");
    CoveringElement out(slot_count(), dim());
    for (int s = 0; s < slot_count(); ++s)
        out.slot(s) = accumulate(out_[vertex_of_slot(s)].diagonal, xi);
    return out;
}

CoveringElement CoveringOperator::apply_cross(const CoveringElement& xi) const {
    if (xi.slot_count() != slot_count() || xi.dim() != dim())
        throw input_error("covering operator: element shape mismatch");
    CoveringElement out(slot_count(), dim());
    for (int s = 0; s < slot_count(); ++s)
        out.slot(s) = accumulate(out_[vertex_of_slot(s)].cross, xi);
    return out;
}

Observable CoveringOperator::read_out_origin(const CoveringElement& xi) const {
    if (xi.slot_count() != slot_count() || xi.dim() != dim())
        throw input_error("covering operator: element shape mismatch");
    const int v0 = automaton_.origin();
    return accumulate(out_[v0].diagonal, xi) + accumulate(out_[v0].cross, xi);
}

Observable CoveringOperator::sphere_sum(const Observable& x, int n) const {
    if (n < 0) throw input_error("sphere_sum: n must be >= 0");
    if (x.rows() != dim() || x.cols() != dim())
        throw input_error("sphere_sum: observable dimension mismatch");
    if (n == 0) return x;
    CoveringElement xi = CoveringElement::constant_lift(x, slot_count());
    for (int t = 0; t < n - 1; ++t) xi = apply(xi);
    return read_out_origin(xi);
}

Observable sphere_sum_bruteforce(const ActionAssignment& assign, const GroupOracle& g,
                                 const Observable& x, int n, std::uint64_t guard) {
    auto spheres = g.spheres(n, guard);
    Observable acc = CMat::Zero(x.rows(), x.cols());
    for (const Word& w : spheres.at(n)) acc += assign.apply_word(w, x);
    return acc;
}

Complex extend_state(const AlgebraState& s, const CoveringElement& xi) {
    Complex acc(0.0, 0.0);
    for (int i = 0; i < xi.slot_count(); ++i) acc += s.value(xi.slot(i));
    return acc / static_cast<double>(xi.slot_count());
}

D1Report verify_D1(const CoveringOperator& p, int block_index, int q, const CoveringElement& xi) {
    const BlockDecomposition& d = p.decomposition();
    const SpectralReport& spec = p.spectral_report();
    if (block_index < 0 || block_index >= d.block_count())
        throw input_error("verify_D1: block index out of range");
    if (!spec.contributing.at(block_index))
        throw input_error("verify_D1: block is not contributing");
    if (q < 0 || q > 12) throw input_error("verify_D1: q must be in [0, 12]");

    const PerronData pd = perron_vector(d.block_matrix(block_index));
    const std::vector<int>& vertices = d.blocks[block_index];
    const int origin = p.automaton().origin();

    // Slot index and in-block position for every block vertex.
    std::vector<int> slots, pos_of_vertex(p.automaton().vertex_count(), -1);
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        if (vertices[i] == origin)
            throw input_error("verify_D1: origin cannot lie in a contributing block");
        slots.push_back(p.slot_of_vertex(vertices[i]));
        pos_of_vertex[vertices[i]] = static_cast<int>(i);
    }

    // Restrict the input to the block's slots.
    CoveringElement restricted(p.slot_count(), p.dim());
    for (int s : slots) restricted.slot(s) = xi.slot(s);

    // Left side: D^q restricted to the block.
    CoveringElement lhs = restricted;
    for (int t = 0; t < q; ++t) lhs = p.apply_diagonal(lhs);

    // Right side: rho^q L_w R_op^q L_w^{-1}, with R_op the covering-style
    // operator whose edge weights come from the stochastic matrix R.
    CoveringElement rhs = restricted;
    for (int s : slots) {
        const int i = pos_of_vertex[p.vertex_of_slot(s)];
        rhs.slot(s) /= pd.w(i);
    }
    for (int t = 0; t < q; ++t) {
        CoveringElement next(p.slot_count(), p.dim());
        for (int s : slots) {
            const int v = p.vertex_of_slot(s);
            const int i = pos_of_vertex[v];
            Observable acc = CMat::Zero(p.dim(), p.dim());
            for (int e : p.automaton().out_edges(v)) {
                const Edge& edge = p.automaton().edges()[e];
                const int j = pos_of_vertex[edge.to];
                if (j < 0) continue; // edge leaves the block
                acc += pd.R(i, j) *
                       p.action().of(edge.label).apply(rhs.slot(p.slot_of_vertex(edge.to)));
            }
            next.slot(s) = acc;
        }
        rhs = next;
    }
    const double scale = std::pow(pd.rho, q);
    for (int s : slots) {
        const int i = pos_of_vertex[p.vertex_of_slot(s)];
        rhs.slot(s) *= scale * pd.w(i);
    }

    D1Report rep;
    rep.block = block_index;
    rep.power = q;
    double dev = 0.0;
    for (int s : slots) dev = std::max(dev, max_abs(lhs.slot(s) - rhs.slot(s)));
    rep.max_deviation = dev;
    return rep;
}

} // namespace covmark
