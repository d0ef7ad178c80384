import json
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import pandas as pd

from libs.resource_access import RawFileRead, RawFileWrite
from utils.bsp.records import SimMetrics
from utils.graph.graph import Graph
from utils.metagraph.metagraph import MetaGraph
from utils.partitioner.layout import PartitionLayout
from utils.programs.bfs import BfsRun, BfsSweepRow, bfs_subgraph, bfs_vertex
from utils.programs.pagerank import PrRun, pr_subgraph, pr_vertex

logger = logging.getLogger(__name__)


@dataclass
class SimulationBundle:
    """
    simulate 단계 결과 묶음

    :param settings: algorithm, model, sources, iterations, damping
    """
    settings: Dict[str, Any]
    pr_vertex: Optional[PrRun] = None
    pr_subgraph: Optional[PrRun] = None
    bfs_vertex: Dict[int, BfsRun] = field(default_factory=dict)
    bfs_subgraph: Dict[int, BfsRun] = field(default_factory=dict)

    def runs(self) -> List[Tuple[str, SimMetrics]]:
        named = []
        if self.pr_vertex is not None:
            named.append(('pr/vertex', self.pr_vertex.metrics))
        if self.pr_subgraph is not None:
            named.append(('pr/subgraph', self.pr_subgraph.metrics))
        for source in sorted(self.bfs_vertex):
            named.append((f'bfs/vertex/{source}', self.bfs_vertex[source].metrics))
        for source in sorted(self.bfs_subgraph):
            named.append((f'bfs/subgraph/{source}', self.bfs_subgraph[source].metrics))
        return named

    def bfs_rows(self) -> List[BfsSweepRow]:
        return [BfsSweepRow(s, self.bfs_vertex[s], self.bfs_subgraph[s])
                for s in sorted(self.bfs_vertex) if s in self.bfs_subgraph]

    def bfs_run(self, name: str) -> Optional[BfsRun]:
        """
        'bfs/vertex/3' 같은 run 이름으로 BFS 결과를 찾는다. PageRank run 이면 None
        """
        parts = name.split('/')
        if parts[0] != 'bfs':
            return None
        runs = self.bfs_vertex if parts[1] == 'vertex' else self.bfs_subgraph
        return runs[int(parts[2])]

    def to_dict(self) -> Dict[str, Any]:
        runs = {}
        for name, metrics in self.runs():
            data = metrics.to_dict()
            bfs = self.bfs_run(name)
            if bfs is not None:
                data['revisit_count'] = bfs.revisit_count
                data['frontier_hist'] = list(bfs.state.frontier_hist)
            runs[name] = data
        return {'settings': self.settings, 'runs': runs}

    def to_frame(self) -> pd.DataFrame:
        """
        run 마다 superstep 당 한 행
        BFS run 은 frontier_hist (거리별 정점 수, JSON 목록) 와 revisit_count 를 행마다 같이 싣는다.
        """
        frames = []
        for name, metrics in self.runs():
            frame = metrics.to_frame()
            frame.insert(0, 'run', name)
            bfs = self.bfs_run(name)
            frame['revisit_count'] = bfs.revisit_count if bfs is not None else None
            frame['frontier_hist'] = json.dumps(list(bfs.state.frontier_hist)) if bfs is not None else ''
            frames.append(frame)
        return pd.concat(frames, ignore_index=True) if frames else pd.DataFrame()

    def save_json(self, path: str):
        with RawFileWrite(path) as w:
            json.dump(self.to_dict(), w, indent=2, sort_keys=True)
            w.write('\n')

    def save_csv(self, path: str):
        with RawFileWrite(path) as w:
            self.to_frame().to_csv(w, index=False)


def read_bundle_json(path: str) -> Dict[str, Any]:
    with RawFileRead(path) as r:
        return json.load(r)


def simulate(g: Graph,
             layout: PartitionLayout,
             mg: MetaGraph,
             settings: Dict[str, Any],
             threads: int = 1) \
        -> SimulationBundle:
    """
    설정에 맞춰 PageRank / BFS 를 vertex, subgraph 모델로 돌린다.
    """
    algorithm, model = settings['algorithm'], settings['model']
    run_vertex, run_subgraph = model in ('vertex', 'both'), model in ('subgraph', 'both')
    bundle = SimulationBundle(settings=dict(settings))

    if algorithm in ('pr', 'both'):
        if run_vertex:
            bundle.pr_vertex = pr_vertex(g, layout, mg, settings['iterations'], settings['damping'], threads)
        if run_subgraph:
            bundle.pr_subgraph = pr_subgraph(g, layout, mg, settings['iterations'], settings['damping'], threads)

    if algorithm in ('bfs', 'both'):
        for source in settings['sources']:
            if run_vertex:
                bundle.bfs_vertex[source] = bfs_vertex(g, layout, source, mg, threads)
            if run_subgraph:
                bundle.bfs_subgraph[source] = bfs_subgraph(g, layout, mg, source, threads)

    logger.info("simulated %d runs (%s, %s)", len(bundle.runs()), algorithm, model)
    return bundle
