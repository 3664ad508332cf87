#include "core/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>

namespace fracwave::quad {

namespace {

template <unsigned N>
GaussRule expand_symmetric()
{
    using rule = boost::math::quadrature::gauss<double, N>;
    const auto& x = rule::abscissa();
    const auto& w = rule::weights();
    GaussRule out;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == 0.0) {
            out.nodes.push_back(0.0);
            out.weights.push_back(w[i]);
            continue;
        }
        out.nodes.push_back(-x[i]);
        out.weights.push_back(w[i]);
        out.nodes.push_back(x[i]);
        out.weights.push_back(w[i]);
    }
    return out;
}

}  // namespace

const GaussRule& gauss5()
{
    static const GaussRule rule = expand_symmetric<5>();
    return rule;
}

const GaussRule& gauss10()
{
    static const GaussRule rule = expand_symmetric<10>();
    return rule;
}

const GaussRule& gauss20()
{
    static const GaussRule rule = expand_symmetric<20>();
    return rule;
}

}  // namespace fracwave::quad
