import { describe, expect, it } from 'vitest';

import { Store } from '../src/store';
import { FIXTURE_NAMES, loadSweep } from './fixtures';

const pareto = loadSweep(FIXTURE_NAMES[0]);

describe('view-state store', () => {
    it('selected layout always belongs to the selected point', () => {
        const store = new Store();
        store.setPareto(pareto);
        store.selectPoint(2);
        expect(store.selectedCandidate()).toBe(pareto.candidates[2]);
        expect(() => store.selectPoint(pareto.candidates.length)).toThrow(/out of range/);
    });

    it('loading a new space drops stale sweep state', () => {
        const store = new Store();
        store.setPareto(pareto);
        store.selectPoint(0);
        store.setSpace({
            format_version: 1,
            width: 4,
            height: 4,
            aisle_width: 1,
            walls: [],
            door_connections: [[0, 0]],
            pillars: [],
            reserved: [],
        });
        expect(store.get().pareto).toBeNull();
        expect(store.get().selectedIndex).toBeNull();
        expect(store.selectedCandidate()).toBeNull();
    });

    it('notifies subscribers on every transition and supports unsubscribe', () => {
        const store = new Store();
        let calls = 0;
        const off = store.subscribe(() => calls++);
        store.setBrush('door');
        store.toggleRefinerOverlay();
        off();
        store.setBrush('wall');
        expect(calls).toBe(2);
        expect(store.get().brush).toBe('wall');
        expect(store.get().refinerOverlay).toBe(true);
    });
});
