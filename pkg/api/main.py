#!/usr/bin/env python3
"""
Graph Counting REST API - FastAPI implementation

HTTP endpoints for counting independent sets and kernels of small graphs
and for drawing seeded random graphs.

To run:
    pip install -e ".[api]"
    python3 api/main.py

Or with uvicorn directly:
    uvicorn api.main:app --reload --host 0.0.0.0 --port 8000

API Documentation:
    Swagger UI: http://localhost:8000/docs
    ReDoc: http://localhost:8000/redoc
"""

import sys
from pathlib import Path

# Add parent directory to path for imports
sys.path.insert(0, str(Path(__file__).parent.parent))

from typing import Dict, List, Optional
from pydantic import BaseModel, ConfigDict, Field

try:
    from fastapi import FastAPI, HTTPException
except ImportError:
    print("Error: FastAPI not installed. Install with: pip install fastapi uvicorn")
    sys.exit(1)

from counting import __version__
from counting.constraints import ConstraintMode, build_bdd
from counting.ensemble_stats import bethe_constants
from counting.graph import EnsembleKind, Graph, Strategy
from counting.reference_data import get_preset_manager

# Vertex limit for synchronous counting requests
MAX_API_VERTICES = 60

app = FastAPI(
    title="Graph Counting API",
    description="Exact counts of independent sets and kernels with binary decision diagrams",
    version=__version__,
    docs_url="/docs",
    redoc_url="/redoc"
)

_PRISM_EDGES = [[1, 2], [1, 4], [1, 6], [2, 3], [2, 6], [3, 4], [3, 5], [4, 5], [5, 6]]


# ============================================================================
# Pydantic Models (Request/Response schemas)
# ============================================================================

class GraphModel(BaseModel):
    """Graph as a vertex count and an edge list over 1..n."""
    model_config = ConfigDict(json_schema_extra={
        "example": {"n": 6, "edges": _PRISM_EDGES}
    })

    n: int = Field(..., ge=0, le=MAX_API_VERTICES, description="Number of vertices")
    edges: List[List[int]] = Field(default_factory=list, description="Edges as [u, v] pairs")


class CountRequest(GraphModel):
    """Request model for counting."""
    model_config = ConfigDict(json_schema_extra={
        "example": {"n": 6, "edges": _PRISM_EDGES, "mode": "kernel", "order": None}
    })

    mode: str = Field("is", description="'is' (independent sets) or 'kernel'")
    order: Optional[List[int]] = Field(
        None, description="Variable order: order[i] is the vertex at level i + 1"
    )


class CountResponse(BaseModel):
    """Response model for counting."""
    model_config = ConfigDict(json_schema_extra={
        "example": {"count": 6, "nodes": 9, "accesses": 412, "mode": "kernel"}
    })

    count: str = Field(..., description="Exact count as a decimal string")
    nodes: int = Field(..., description="Node count of the root BDD, sinks included")
    accesses: int = Field(..., description="Store accesses during construction")
    mode: str = Field(..., description="Constraint mode counted")


class GenerateRequest(BaseModel):
    """Request model for drawing a random graph."""
    model_config = ConfigDict(json_schema_extra={
        "example": {"n": 10, "regular": 3, "avg_degree": None, "seed": 42, "strategy": "greedy"}
    })

    n: int = Field(..., ge=1, le=1000, description="Number of vertices")
    regular: Optional[int] = Field(None, ge=0, description="Degree of a regular graph")
    avg_degree: Optional[float] = Field(None, ge=0, description="Average degree")
    seed: int = Field(0, ge=0, description="RNG seed")
    strategy: str = Field("greedy", description="'greedy' or 'pairing' (regular graphs)")


class GenerateResponse(BaseModel):
    """Response model for a generated graph."""
    n: int = Field(..., description="Number of vertices")
    edges: List[List[int]] = Field(..., description="Edges as [u, v] pairs with u < v")
    ensemble: str = Field(..., description="Ensemble label")
    degrees: Dict[int, int] = Field(..., description="Degree histogram")


# ============================================================================
# Helper Functions
# ============================================================================

def graph_from_model(model: GraphModel) -> Graph:
    """Convert a request body to a Graph (ValueError on bad edges)."""
    return Graph.from_edge_list(model.n, model.edges)


def graph_to_response(graph: Graph, ensemble: EnsembleKind) -> GenerateResponse:
    return GenerateResponse(
        n=graph.n,
        edges=[[u, v] for u, v in graph.sorted_edges()],
        ensemble=ensemble.label(),
        degrees=graph.degree_histogram()
    )


# ============================================================================
# API Endpoints
# ============================================================================

@app.get("/", tags=["General"])
async def root():
    """API root endpoint with an endpoint list."""
    return {
        "message": "Graph Counting API",
        "version": __version__,
        "documentation": "/docs",
        "endpoints": {
            "POST /api/count": "Count independent sets or kernels of a graph",
            "POST /api/generate": "Draw a seeded random graph",
            "GET /api/bethe": "Bethe constants z and w",
            "GET /api/presets": "List experiment presets",
            "GET /api/health": "Health check"
        }
    }


@app.get("/api/health", tags=["General"])
async def health_check():
    """Health check endpoint for monitoring."""
    return {
        "status": "healthy",
        "version": __version__,
        "presets_loaded": len(get_preset_manager().list_presets())
    }


@app.get("/api/bethe", tags=["Information"])
async def get_bethe():
    """Root z of z^3 + z - 1 = 0 and the growth constant w."""
    return bethe_constants().to_dict()


@app.get("/api/presets", tags=["Information"])
async def list_presets():
    """List the standard experiment presets."""
    presets = [preset.to_dict() for _, preset in get_preset_manager().list_presets()]
    return {"presets": presets, "count": len(presets)}


@app.post("/api/count", response_model=CountResponse, tags=["Counting"])
async def count_graph(request: CountRequest):
    """
    Build the constraint BDD of a graph and count its solutions exactly.

    The count is returned as a string since it can exceed 2^53.
    """
    try:
        graph = graph_from_model(request)
        mode = ConstraintMode.parse(request.mode)
        f = build_bdd(graph, mode, order=request.order)
        return CountResponse(
            count=str(f.count()),
            nodes=f.node_count(),
            accesses=f.manager.accesses,
            mode=mode.value
        )
    except ValueError as e:
        raise HTTPException(status_code=400, detail=f"Invalid request: {str(e)}")
    except Exception as e:
        raise HTTPException(status_code=500, detail=f"Error counting: {str(e)}")


@app.post("/api/generate", response_model=GenerateResponse, tags=["Graphs"])
async def generate_graph(request: GenerateRequest):
    """
    Draw a random regular or average-degree graph from a seed.

    The same request always returns the same graph.
    """
    try:
        if (request.regular is None) == (request.avg_degree is None):
            raise ValueError("Give exactly one of 'regular' and 'avg_degree'")
        if request.regular is not None:
            ensemble = EnsembleKind.regular(request.regular)
        else:
            ensemble = EnsembleKind.average_degree(request.avg_degree)
        graph = ensemble.sample(request.n, request.seed, strategy=Strategy(request.strategy))
        return graph_to_response(graph, ensemble)
    except ValueError as e:
        raise HTTPException(status_code=400, detail=f"Invalid request: {str(e)}")
    except Exception as e:
        raise HTTPException(status_code=500, detail=f"Error generating graph: {str(e)}")


@app.post("/api/validate", tags=["Graphs"])
async def validate_graph(request: GraphModel):
    """Check a graph body without counting it."""
    from counting.validation import quick_validate

    try:
        graph = graph_from_model(request)
    except ValueError as e:
        return {"valid": False, "message": str(e), "n": request.n}
    is_valid, message = quick_validate(graph)
    return {"valid": is_valid, "message": message, "n": request.n}


# ============================================================================
# Main Entry Point
# ============================================================================

if __name__ == "__main__":
    try:
        import uvicorn
        print("=" * 60)
        print("Graph Counting API")
        print("=" * 60)
        print("\nAPI Documentation: http://localhost:8000/docs")
        print("Press Ctrl+C to stop")
        print("=" * 60)

        uvicorn.run(app, host="0.0.0.0", port=8000, log_level="info")
    except ImportError:
        print("\nError: uvicorn not installed")
        print("Install with: pip install uvicorn")
        sys.exit(1)
