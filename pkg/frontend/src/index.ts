export { WareplanClient, ApiError, type JobRequest } from './api';
export { paint, clampCell, maskAt, maskConflicts, type Brush } from './editor';
export {
    CELL_COLORS,
    CELL_NAMES,
    assertRectangular,
    recount,
    recountCandidate,
    type CellChar,
    type GridCounts,
} from './grid';
export {
    compareManual,
    dominanceFront,
    frontPolyline,
    isMonotoneFront,
    scatterPoints,
    type ScatterPoint,
} from './pareto';
export { Store, initialState, type ManualOverlay, type ViewState } from './store';
export * from './types';
export { pointTooltip, renderGrid, renderLegend, renderScatter } from './view';
