#!/usr/bin/env python3
"""MCP server exposing numerical monoid factorization tools."""

from __future__ import annotations

import asyncio
import logging
from pathlib import Path
from typing import Any, Callable, Dict, List

from mcp.server import Server
from mcp.server.stdio import stdio_server
from mcp.types import TextContent, Tool

from . import commands
from .config import CatenaryConfig
from .errors import MonoidError
from .output import OutputEnvelope

logger = logging.getLogger(__name__)

config_path = Path(__file__).parent.parent / "config" / "catenary.json"
_config: CatenaryConfig | None = None

GENERATORS = {
    "description": "Generators as a list of positive integers or a comma-separated string",
    "anyOf": [
        {"type": "array", "items": {"type": "integer", "minimum": 1}},
        {"type": "string"},
    ],
}
WINDOW = {"type": "integer", "description": "Largest element examined (default: heuristic window)"}


def get_config() -> CatenaryConfig:
    """Load the configuration once; defaults apply when no file is present."""
    global _config
    if _config is None:
        _config = CatenaryConfig.from_file(config_path) if config_path.exists() else CatenaryConfig()
    return _config


def list_tool_definitions() -> List[Tool]:
    return [
        Tool(
            name="analyze_monoid",
            description=(
                "Summarize a numerical monoid: minimal generators, Frobenius number, "
                "Apéry set, Betti elements, catenary degree and set of catenary degrees."
            ),
            inputSchema={
                "type": "object",
                "properties": {"generators": GENERATORS, "window": WINDOW},
                "required": ["generators"],
            },
        ),
        Tool(
            name="factorize",
            description="List every factorization of an element as exponent vectors.",
            inputSchema={
                "type": "object",
                "properties": {"generators": GENERATORS, "n": {"type": "integer"}},
                "required": ["generators", "n"],
            },
        ),
        Tool(
            name="catenary_degree",
            description="Catenary degree of one element of a numerical monoid.",
            inputSchema={
                "type": "object",
                "properties": {
                    "generators": GENERATORS,
                    "n": {"type": "integer"},
                    "use_oracle": {"type": "boolean", "description": "Use the brute-force reference"},
                },
                "required": ["generators", "n"],
            },
        ),
        Tool(
            name="betti_elements",
            description="Elements whose factorization graph is disconnected.",
            inputSchema={
                "type": "object",
                "properties": {"generators": GENERATORS, "use_oracle": {"type": "boolean"}},
                "required": ["generators"],
            },
        ),
        Tool(
            name="catenary_set",
            description=(
                "Set of catenary degrees. Results computed over a finite window are "
                "flagged as heuristic and carry the window."
            ),
            inputSchema={
                "type": "object",
                "properties": {"generators": GENERATORS, "window": WINDOW},
                "required": ["generators"],
            },
        ),
        Tool(
            name="glue_monoids",
            description="Gluing d1*S1 + d2*S2 of two numerical monoids.",
            inputSchema={
                "type": "object",
                "properties": {
                    "g1": GENERATORS,
                    "d1": {"type": "integer", "minimum": 1},
                    "g2": GENERATORS,
                    "d2": {"type": "integer", "minimum": 1},
                },
                "required": ["g1", "d1", "g2", "d2"],
            },
        ),
        Tool(
            name="adjoin_generator",
            description="Build <c*n_1, ..., c*n_k, b>, whose catenary degree is c.",
            inputSchema={
                "type": "object",
                "properties": {
                    "generators": GENERATORS,
                    "c": {"type": "integer"},
                    "b": {"type": "integer"},
                },
                "required": ["generators", "c", "b"],
            },
        ),
        Tool(
            name="realize_catenary_set",
            description=(
                "Construct a numerical monoid whose set of catenary degrees is the "
                "given finite set, optionally with explicit b values and verification."
            ),
            inputSchema={
                "type": "object",
                "properties": {
                    "target": GENERATORS,
                    "b_list": GENERATORS,
                    "verify": {"type": "integer", "description": "Verification budget (0: configured default)"},
                },
                "required": ["target"],
            },
        ),
    ]


ToolHandler = Callable[[Dict[str, Any], CatenaryConfig], OutputEnvelope]

TOOL_HANDLERS: Dict[str, ToolHandler] = {
    "analyze_monoid": lambda a, cfg: commands.analyze(a["generators"], a.get("window"), cfg),
    "factorize": lambda a, cfg: commands.factorize(a["generators"], int(a["n"])),
    "catenary_degree": lambda a, cfg: commands.catenary(
        a["generators"], int(a["n"]), bool(a.get("use_oracle", False)), cfg
    ),
    "betti_elements": lambda a, cfg: commands.betti(a["generators"], bool(a.get("use_oracle", False)), cfg),
    "catenary_set": lambda a, cfg: commands.cset(a["generators"], a.get("window"), cfg),
    "glue_monoids": lambda a, cfg: commands.glue_command(a["g1"], int(a["d1"]), a["g2"], int(a["d2"])),
    "adjoin_generator": lambda a, cfg: commands.adjoin_command(a["generators"], int(a["c"]), int(a["b"]), cfg),
    "realize_catenary_set": lambda a, cfg: commands.realize_command(
        a["target"], a.get("b_list"), a.get("verify"), cfg
    ),
}


def call_tool_sync(name: str, arguments: Dict[str, Any]) -> str:
    """Run one tool and render its reply; domain errors become ``Name: message``."""
    handler = TOOL_HANDLERS.get(name)
    if handler is None:
        raise ValueError(f"Unknown tool: {name}")
    try:
        return handler(arguments or {}, get_config()).render("json")
    except MonoidError as exc:
        logger.info("Tool %s rejected input: %s", name, exc)
        return f"{exc.name}: {exc}"


async def main() -> None:
    """Run the MCP server."""
    server = Server("mcp-catenary")

    @server.list_tools()
    async def list_tools() -> list[Tool]:
        return list_tool_definitions()

    @server.call_tool()
    async def call_tool(name: str, arguments: Any) -> list[TextContent]:
        try:
            result = await asyncio.to_thread(call_tool_sync, name, arguments)
        except Exception as e:
            logger.exception("Error in %s", name)
            result = f"Error in {name}: {e}"
        return [TextContent(type="text", text=result)]

    async with stdio_server() as (read_stream, write_stream):
        await server.run(read_stream, write_stream, server.create_initialization_options())


def run() -> None:
    logging.basicConfig(level=logging.INFO)
    asyncio.run(main())


if __name__ == "__main__":
    run()
