#include "imgq/composition.hpp"

#include "imgq/error.hpp"
#include "imgq/imgcore.hpp"
#include "imgq/simplicity.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>

namespace imgq {

SaliencyMap spectral_residual_saliency(const RasterImage& rgb, const SaliencyConfig& cfg) {
    const int n = cfg.working_size;
    const Plane small = resize(to_gray_plane(rgb), n, n);
    const ComplexPlane spectrum = fft2(small);

    Plane log_amp(n, n);
    double max_amp = 0.0;
    double mean_ac = 0.0;
    for (std::size_t i = 0; i < spectrum.size(); ++i) {
        const double a = std::abs(spectrum[i]);
        max_amp = std::max(max_amp, a);
        if (i > 0)
            mean_ac += a;
    }
    mean_ac /= static_cast<double>(spectrum.size() - 1);
    if (mean_ac <= 1e-9 * max_amp)
        return {Plane(rgb.width(), rgb.height(), 0.0)};
    // The floor tracks the spectrum so the map is invariant to intensity
    // scaling. It has to be large enough that exact spectral zeros (common
    // on synthetic shapes) do not dominate the local average.
    const double eps = 1e-2 * mean_ac;

    for (std::size_t i = 0; i < spectrum.size(); ++i)
        log_amp.data[i] = std::log(std::abs(spectrum[i]) + eps);
    const Plane avg = box_filter_3x3(log_amp);

    ComplexPlane residual(spectrum.size());
    for (std::size_t i = 0; i < spectrum.size(); ++i)
        residual[i] = std::polar(std::exp(log_amp.data[i] - avg.data[i]), std::arg(spectrum[i]));
    const ComplexPlane back = ifft2(residual, n, n);

    Plane power(n, n);
    for (std::size_t i = 0; i < back.size(); ++i)
        power.data[i] = std::norm(back[i]);
    Plane full = resize(gaussian_blur(power, cfg.smoothing_sigma), rgb.width(), rgb.height());

    const double peak = full.max();
    if (peak > 0.0)
        for (double& v : full.data)
            v = std::max(0.0, v / peak);
    return {std::move(full)};
}

std::array<int, 6> thirds_boundaries(int n) {
    // Cumulative band edges in twelfths: 1/4, 1/6, 1/6, 1/6, 1/4.
    static constexpr std::array<int, 6> twelfths = {0, 3, 5, 7, 9, 12};
    std::array<int, 6> b{};
    for (std::size_t i = 0; i < b.size(); ++i)
        b[i] = (2 * twelfths[i] * n + 12) / 24;
    return b;
}

ThirdsMap thirds_map(const SaliencyMap& sal) {
    const Plane& p = sal.values;
    if (p.empty())
        throw Error(ErrorCode::EmptyInput, "thirds map of empty saliency map");
    const auto bx = thirds_boundaries(p.width);
    const auto by = thirds_boundaries(p.height);
    ThirdsMap cells{};
    for (int r = 0; r < 5; ++r)
        for (int c = 0; c < 5; ++c) {
            double s = 0.0;
            for (int y = by[r]; y < by[r + 1]; ++y)
                for (int x = bx[c]; x < bx[c + 1]; ++x)
                    s += p(x, y);
            const long area = static_cast<long>(by[r + 1] - by[r]) * (bx[c + 1] - bx[c]);
            cells[r * 5 + c] = area > 0 ? s / static_cast<double>(area) : 0.0;
        }
    return cells;
}

namespace {

// Component tree node: one per (component, gray level) at which the
// component gained pixels.
struct Node {
    int level = 0;
    long area = 0;
    int parent = -1;
    int first_child = -1;
    int next_sibling = -1;
    double variation = 0.0;
    bool stable = false;
};

class ComponentTree {
public:
    ComponentTree(const std::vector<unsigned char>& levels, int w, int h) { build(levels, w, h); }

    std::vector<Node>& nodes() { return nodes_; }

private:
    int find(int p) {
        while (uf_[p] != p) {
            uf_[p] = uf_[uf_[p]];
            p = uf_[p];
        }
        return p;
    }

    void append_pending(int root, int node) {
        nodes_[node].next_sibling = -1;
        if (pending_head_[root] < 0)
            pending_head_[root] = node;
        else
            nodes_[pending_tail_[root]].next_sibling = node;
        pending_tail_[root] = node;
    }

    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b)
            return;
        if (size_[a] < size_[b] || (size_[a] == size_[b] && a > b))
            std::swap(a, b);
        uf_[b] = a;
        size_[a] += size_[b];
        if (pending_head_[b] >= 0) {
            if (pending_head_[a] < 0)
                pending_head_[a] = pending_head_[b];
            else
                nodes_[pending_tail_[a]].next_sibling = pending_head_[b];
            pending_tail_[a] = pending_tail_[b];
        }
        if (last_node_[b] >= 0)
            append_pending(a, last_node_[b]);
    }

    void build(const std::vector<unsigned char>& levels, int w, int h) {
        const int n = w * h;
        uf_.assign(n, -1);
        size_.assign(n, 0);
        last_node_.assign(n, -1);
        pending_head_.assign(n, -1);
        pending_tail_.assign(n, -1);
        std::vector<int> stamp(n, -1);

        std::array<int, 257> start{};
        for (unsigned char v : levels)
            ++start[v + 1];
        std::partial_sum(start.begin(), start.end(), start.begin());
        std::vector<int> order(n);
        {
            auto cursor = start;
            for (int i = 0; i < n; ++i)
                order[cursor[levels[i]]++] = i;
        }

        static constexpr int dx[4] = {1, 0, -1, 0};
        static constexpr int dy[4] = {0, -1, 0, 1};
        for (int g = 0; g < 256; ++g) {
            if (start[g] == start[g + 1])
                continue;
            for (int k = start[g]; k < start[g + 1]; ++k) {
                const int p = order[k];
                uf_[p] = p;
                size_[p] = 1;
                const int x = p % w, y = p / w;
                for (int e = 0; e < 4; ++e) {
                    const int qx = x + dx[e], qy = y + dy[e];
                    if (qx < 0 || qy < 0 || qx >= w || qy >= h)
                        continue;
                    const int q = qy * w + qx;
                    if (uf_[q] >= 0)
                        unite(p, q);
                }
            }
            for (int k = start[g]; k < start[g + 1]; ++k) {
                const int r = find(order[k]);
                if (stamp[r] == g)
                    continue;
                stamp[r] = g;
                const int id = static_cast<int>(nodes_.size());
                nodes_.push_back(Node{g, size_[r]});
                if (last_node_[r] >= 0)
                    append_pending(r, last_node_[r]);
                for (int c = pending_head_[r]; c >= 0; c = nodes_[c].next_sibling)
                    nodes_[c].parent = id;
                nodes_[id].first_child = pending_head_[r];
                pending_head_[r] = pending_tail_[r] = -1;
                last_node_[r] = id;
            }
        }
    }

    std::vector<int> uf_;
    std::vector<long> size_;
    std::vector<int> last_node_;
    std::vector<int> pending_head_;
    std::vector<int> pending_tail_;
    std::vector<Node> nodes_;
};

// True unless a descendant larger than `area` is stable with lower variation.
bool no_better_descendant(const std::vector<Node>& nodes, int id, double variation, double area) {
    const Node& nd = nodes[id];
    if (static_cast<double>(nd.area) <= area)
        return true;
    if (nd.stable && nd.variation < variation)
        return false;
    for (int c = nd.first_child; c >= 0; c = nodes[c].next_sibling)
        if (!no_better_descendant(nodes, c, variation, area))
            return false;
    return true;
}

} // namespace

int mser_count_dark(const std::vector<unsigned char>& levels, int width, int height,
                    const MserConfig& cfg) {
    if (levels.size() != static_cast<std::size_t>(width) * height)
        throw Error(ErrorCode::DimensionMismatch, "level buffer does not match extent");
    ComponentTree tree(levels, width, height);
    auto& nodes = tree.nodes();
    const double total = static_cast<double>(width) * height;
    const double min_area = cfg.min_area * total;
    const double max_area = cfg.max_area * total;

    for (auto& nd : nodes) {
        const Node* top = &nd;
        while (top->parent >= 0 && nodes[top->parent].level <= nd.level + cfg.delta)
            top = &nodes[top->parent];
        nd.variation = static_cast<double>(top->area - nd.area) / static_cast<double>(nd.area);
    }

    // Local minimum of variation along the tree, within area and variation limits.
    for (auto& nd : nodes) {
        const bool candidate = (nd.parent < 0 || nd.variation <= nodes[nd.parent].variation) &&
                               nd.area >= min_area && nd.area <= max_area &&
                               nd.variation <= cfg.max_variation;
        if (!candidate)
            continue;
        if (nd.first_child < 0) {
            nd.stable = true;
            continue;
        }
        for (int c = nd.first_child; c >= 0; c = nodes[c].next_sibling)
            if (nd.variation < nodes[c].variation)
                nd.stable = true;
    }

    // Diversity pruning, ancestors before descendants.
    int count = 0;
    for (int id = static_cast<int>(nodes.size()) - 1; id >= 0; --id) {
        Node& nd = nodes[id];
        if (!nd.stable)
            continue;
        const double min_parent_area = nd.area / (1.0 - cfg.min_diversity) + 0.5;
        for (int p = nd.parent; p >= 0 && nodes[p].area < min_parent_area; p = nodes[p].parent)
            if (nodes[p].stable && nodes[p].variation <= nd.variation) {
                nd.stable = false;
                break;
            }
        if (nd.stable) {
            const double max_child_area = nd.area * (1.0 - cfg.min_diversity) + 0.5;
            for (int c = nd.first_child; c >= 0 && nd.stable; c = nodes[c].next_sibling)
                if (!no_better_descendant(nodes, c, nd.variation, max_child_area))
                    nd.stable = false;
        }
        if (nd.stable)
            ++count;
    }
    return count;
}

int mser_count(const RasterImage& rgb, const MserConfig& cfg) {
    const Plane gray = to_gray_plane(rgb);
    std::vector<unsigned char> dark(gray.size());
    std::vector<unsigned char> bright(gray.size());
    for (std::size_t i = 0; i < gray.size(); ++i) {
        dark[i] = static_cast<unsigned char>(to_level(gray.data[i]));
        bright[i] = static_cast<unsigned char>(255 - dark[i]);
    }
    return mser_count_dark(dark, gray.width, gray.height, cfg) +
           mser_count_dark(bright, gray.width, gray.height, cfg);
}

} // namespace imgq
