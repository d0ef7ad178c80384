import json
from typing import Any, Dict, Sequence

from libs.resource_access import RawFileRead, RawFileWrite
from utils import settings
from utils.metagraph.metagraph import MetaGraph
from utils.metagraph.stats import MetaStats, stats_frame


def metagraph_to_dict(mg: MetaGraph) -> Dict[str, Any]:
    return {
        'graph_fingerprint': mg.graph_fingerprint,
        'layout_fingerprint': mg.layout_fingerprint,
        'fingerprint': mg.fingerprint,
        'meta_vertices': [
            {
                'id': s.id,
                'partition': s.partition,
                'machine': s.machine,
                'weight_v': s.weight_v,
                'weight_e': s.weight_e,
            }
            for s in mg.subgraphs
        ],
        'meta_edges': [
            {'src': e.src, 'dst': e.dst, 'weight': e.weight, 'locality': e.locality}
            for e in mg.meta_edges
        ],
    }


def save_metagraph(mg: MetaGraph, path: str):
    with RawFileWrite(path) as w:
        json.dump(metagraph_to_dict(mg), w, indent=2, sort_keys=True)
        w.write('\n')


def read_metagraph_header(path: str) -> Dict[str, Any]:
    """
    저장된 meta-graph JSON 을 읽는다. (출처 확인용 fingerprint 포함)
    """
    with RawFileRead(path) as r:
        return json.load(r)


def save_meta_stats(rows: Sequence[MetaStats], path: str):
    with RawFileWrite(path) as w:
        stats_frame(rows).to_csv(w, index=False, float_format=settings.TABLE_FLOAT_FORMAT)
