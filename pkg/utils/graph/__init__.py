from utils.graph.graph import Graph
from utils.graph.io import load_edge_list, save_edge_list, write_vertex_values
from utils.graph.generators import *
from utils.graph.components import wcc, connected_components, largest_component
from utils.graph.distance import DiameterResult, bfs_distances, eccentricity, diameter, diameter_auto
from utils.graph.degree import DegreeCdf, PowerlawParams, cdf_from_degrees, degree_cdf, fit_powerlaw
