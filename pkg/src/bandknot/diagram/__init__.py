from .pdcode import Diagram, DisconnectedDiagram, connected_sum, parse_pd_tuples
from .project import NoGenericDirection, project
from .simplify import reduce_r1_r2, simplify
