import nodetool.nodes.infinity_laplace.bounds
import nodetool.nodes.infinity_laplace.experiments
import nodetool.nodes.infinity_laplace.solvers
